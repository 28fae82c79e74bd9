#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "olg/common.hpp"
#include "olg/harness.hpp"
#include "olg/json_io.hpp"
#include "olg/rearrange.hpp"

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

olg::OperatorSpec::Kind op_kind(const std::string& name) {
    using Kind = olg::OperatorSpec::Kind;
    if (name == "identity") return Kind::identity;
    if (name == "zero") return Kind::zero;
    if (name == "averaging") return Kind::averaging;
    if (name == "hardy_I") return Kind::hardy_I;
    if (name == "hardy_I2") return Kind::hardy_I2;
    if (name == "convolution") return Kind::convolution;
    if (name == "kernel") return Kind::kernel;
    if (name == "associate") return Kind::associate;
    if (name == "s_transform") return Kind::s_transform;
    if (name == "h1") return Kind::h1;
    if (name == "h2") return Kind::h2;
    throw std::runtime_error("unknown operator '" + name + "'");
}

std::function<double(double, double)> kernel_fn(const olg::Kernel& K) {
    return [K](double x, double y) { return olg::eval(K, x, y); };
}

json reports_json(const std::vector<olg::ConditionReport>& reports) {
    json out = json::array();
    for (const auto& r : reports)
        out.push_back(olg::to_json(r));
    return out;
}

void print_report_summaries(const std::vector<olg::ConditionReport>& reports) {
    for (const auto& r : reports)
        std::cout << r.condition_id << ": " << olg::to_string(r.verdict)
                  << " (best constant estimate " << r.best_constant_estimate
                  << ")\n";
}

int cmd_check(const std::string& target, const json& cfg, const std::string& out,
              std::uint64_t seed, int trials, int grid_n, double tol) {
    olg::QuadratureSpec q;
    if (tol > 0.0)
        q.rel_tol = tol;
    olg::ConditionGrids grids = olg::ConditionGrids::defaults();
    if (grid_n > 0)
        grids.x_grid = olg::log_grid(1e-3, 1e3, static_cast<std::size_t>(grid_n));
    std::vector<olg::ConditionReport> reports;

    if (target == "theorem2") {
        olg::WeightedSetup s{olg::nfunction_from_json(cfg.at("phi1")),
                             olg::nfunction_from_json(cfg.at("phi2")),
                             olg::weight_from_json(cfg.at("w")),
                             olg::weight_from_json(cfg.at("t_w")),
                             olg::weight_from_json(cfg.at("u")),
                             olg::weight_from_json(cfg.at("v")),
                             {},
                             cfg.value("hardy_indicator", false),
                             q};
        if (cfg.contains("kernel"))
            s.K = kernel_fn(olg::kernel_from_json(cfg.at("kernel")));
        reports = olg::check_theorem2(s, grids);
    } else if (target == "theorem4") {
        reports = olg::check_theorem4_orlicz(
            olg::pos_function_from_json(cfg.at("k_star")),
            olg::nfunction_from_json(cfg.at("phi1")),
            olg::nfunction_from_json(cfg.at("phi2")), grids, q);
    } else if (target == "power") {
        olg::PowerParams p;
        p.p = cfg.at("p").get<double>();
        p.q = cfg.at("q").get<double>();
        if (cfg.contains("r"))
            p.r = cfg.at("r").get<double>();
        reports = olg::check_power_conditions(
            olg::pos_function_from_json(cfg.at("k_star")), p, grids.x_grid, q);
    } else if (target == "theorem7") {
        reports = olg::check_theorem7(olg::nfunction_from_json(cfg.at("phi")),
                                      olg::weight_from_json(cfg.at("u")), grids, q);
    } else if (target == "theorem10") {
        olg::HardyKernels hk(olg::kernel_from_json(cfg.at("L")), q);
        reports = olg::check_theorem10(hk, olg::nfunction_from_json(cfg.at("phi1")),
                                       olg::nfunction_from_json(cfg.at("phi2")),
                                       olg::weight_from_json(cfg.at("u1")),
                                       olg::weight_from_json(cfg.at("u2")), grids, q);
    } else if (target == "theorem12") {
        olg::HardyKernels hk(olg::kernel_from_json(cfg.at("L")), q);
        olg::PowerParams p;
        p.p = cfg.at("p").get<double>();
        p.q = cfg.at("q").get<double>();
        reports = olg::check_theorem12(hk, p, olg::weight_from_json(cfg.at("u1")),
                                       olg::weight_from_json(cfg.at("u2")),
                                       grids.x_grid, q);
    } else if (target == "growth") {
        olg::StepFunction k = olg::step_from_json(cfg.at("profile"));
        std::vector<std::array<double, 3>> triples;
        if (cfg.contains("triples")) {
            for (const auto& t : cfg.at("triples"))
                triples.push_back({t.at(0).get<double>(), t.at(1).get<double>(),
                                   t.at(2).get<double>()});
        } else {
            std::mt19937_64 rng(seed);
            double span = std::max(k.support_end() * 1.5, 1.0);
            std::uniform_real_distribution<double> coord(1e-9, span);
            int n = trials > 0 ? trials : 1000;
            while (static_cast<int>(triples.size()) < n) {
                double a = coord(rng), b = coord(rng), c = coord(rng);
                double y = std::min({a, b, c}), x = std::max({a, b, c});
                double z = a + b + c - y - x;
                if (y < z && z < x)
                    triples.push_back({y, z, x});
            }
        }
        reports = {olg::check_growth(
            [k](double x, double y) { return k(x + y); }, triples)};
    } else if (target == "kantorovich") {
        olg::PowerParams p;
        p.p = cfg.value("p", 2.0);
        p.q = cfg.value("q", 2.0);
        std::vector<double> eps;
        if (cfg.contains("eps"))
            eps = cfg.at("eps").get<std::vector<double>>();
        else
            for (int k = 3; k <= 10; ++k)
                eps.push_back(std::ldexp(1.0, -k));
        olg::Kernel K = olg::kernel_from_json(cfg.at("kernel"));
        reports = {olg::kantorovich_probe(std::get<olg::AnalyticKernel>(K), p, eps, q)};
    } else {
        throw std::runtime_error("unknown check target '" + target + "'");
    }

    print_report_summaries(reports);
    if (!out.empty()) {
        std::ofstream js(out);
        js << reports_json(reports).dump(2) << "\n";
        std::string csv_path = out;
        auto dot = csv_path.rfind('.');
        csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) +
                   ".csv";
        std::ofstream csv(csv_path);
        for (const auto& r : reports)
            csv << olg::report_csv(r);
    }
    for (const auto& r : reports)
        if (r.verdict == olg::Verdict::violated_witness)
            return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rearrangement / Orlicz-norm / integral-operator toolkit"};
    app.require_subcommand(1);

    std::string in_path, out_path, config_path, phi_path, weight_path, conv_path,
        kernel_path;
    std::string op_name = "identity", suite, check_target;
    std::uint64_t seed = 1;
    int trials = 0, probes = 20, grid_n = 0;
    double tol = 0.0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--seed", seed, "RNG seed");
        c->add_option("--trials", trials, "trial count");
        c->add_option("--grid", grid_n, "grid resolution");
        c->add_option("--tol", tol, "tolerance override");
        c->add_option("--out", out_path, "output path");
    };

    auto* rearrange = app.add_subcommand(
        "rearrange", "Nonincreasing rearrangement of a step function");
    rearrange->add_option("--in", in_path, "step function JSON")->required();
    add_common(rearrange);

    auto* norm = app.add_subcommand("norm", "Luxemburg gauge norm");
    norm->add_option("--in", in_path, "function JSON")->required();
    norm->add_option("--phi", phi_path, "N-function JSON")->required();
    norm->add_option("--weight", weight_path, "weight JSON");
    add_common(norm);

    auto* apply_cmd = app.add_subcommand("apply", "Apply an integral operator");
    apply_cmd->add_option("--in", in_path, "function JSON")->required();
    apply_cmd->add_option("--op", op_name, "operator kind")->required();
    apply_cmd->add_option("--kernel", kernel_path, "kernel JSON");
    apply_cmd->add_option("--conv", conv_path, "convolution kernel JSON");
    add_common(apply_cmd);

    auto* check = app.add_subcommand("check", "Sufficient-condition checkers");
    check->add_option("--target", check_target,
                      "theorem2|theorem4|power|theorem7|theorem10|theorem12|"
                      "growth|kantorovich")
        ->required();
    check->add_option("--config", config_path, "checker inputs JSON")->required();
    add_common(check);

    auto* verify = app.add_subcommand("verify", "Run one inequality suite");
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--config", config_path, "suite inputs JSON");
    verify->add_option("--probes", probes, "probes per trial");
    add_common(verify);

    auto* run = app.add_subcommand("run", "Run a scenario config");
    run->add_option("--config", config_path, "scenario config JSON")->required();
    add_common(run);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rearrange->parsed()) {
            olg::StepFunction f = olg::step_from_json(read_json(in_path));
            olg::RearrangementResult r = olg::decreasing_rearrangement(f);
            emit({{"star", olg::to_json(r.star)},
                  {"total_measure", r.total_measure}},
                 out_path);
            return 0;
        }
        if (norm->parsed()) {
            olg::PosFunction f = olg::pos_function_from_json(read_json(in_path));
            olg::NFunction phi = olg::nfunction_from_json(read_json(phi_path));
            olg::Weight u = weight_path.empty()
                                ? olg::Weight::one()
                                : olg::weight_from_json(read_json(weight_path));
            olg::GaugeNormOptions opt;
            if (tol > 0.0)
                opt.lambda_rel_tol = tol;
            emit({{"norm", olg::gauge_norm(f, phi, u, opt)}}, out_path);
            return 0;
        }
        if (apply_cmd->parsed()) {
            olg::OperatorSpec op;
            op.kind = op_kind(op_name);
            if (!kernel_path.empty()) {
                olg::Kernel K = olg::kernel_from_json(read_json(kernel_path));
                if (op.kind == olg::OperatorSpec::Kind::h1 ||
                    op.kind == olg::OperatorSpec::Kind::h2)
                    op.hardy = std::make_shared<olg::HardyKernels>(K);
                else
                    op.kernel = K;
            }
            if (!conv_path.empty())
                op.conv_kernel = olg::step_from_json(read_json(conv_path));
            olg::PosFunction f = olg::pos_function_from_json(read_json(in_path));
            olg::PosFunction out = olg::apply(op, f);
            if (const auto* s = std::get_if<olg::StepFunction>(&out)) {
                emit(olg::to_json(*s), out_path);
            } else {
                const auto& a = std::get<olg::AnalyticFunction>(out);
                double end = a.bounded_domain() ? a.domain_end() : 10.0;
                std::size_t n = grid_n > 0 ? static_cast<std::size_t>(grid_n) : 64;
                olg::StepFunction d =
                    olg::discretize(a, olg::linspace(0.0, end, n + 1));
                emit(olg::to_json(d), out_path);
            }
            return 0;
        }
        if (check->parsed())
            return cmd_check(check_target, read_json(config_path), out_path, seed,
                             trials, grid_n, tol);
        if (verify->parsed()) {
            olg::Scenario sc;
            sc.name = suite;
            sc.suite = suite;
            sc.seed = seed;
            if (trials > 0)
                sc.trials = trials;
            sc.probes = probes;
            if (!config_path.empty())
                sc.inputs = read_json(config_path);
            olg::SuiteResult r = olg::verify_inequality_suite(sc);
            std::cout << r.suite << ": " << (r.pass ? "pass" : "FAIL")
                      << " (worst slack " << r.worst_slack << ")\n";
            if (!out_path.empty()) {
                std::ofstream csv(out_path + "/" + sc.name + ".csv");
                csv << olg::suite_csv(sc.name, r);
                std::ofstream js(out_path + "/" + sc.name + ".json");
                js << olg::suite_json(r).dump(2) << "\n";
            }
            return r.pass ? 0 : 1;
        }
        if (run->parsed()) {
            std::string dir = out_path.empty() ? "reports" : out_path;
            olg::RunOutcome rc = olg::run_scenario_file(config_path, dir);
            for (const auto& r : rc.results)
                std::cout << r.suite << ": " << (r.pass ? "pass" : "FAIL")
                          << " (worst slack " << r.worst_slack << ")\n";
            return rc.exit_code;
        }
    } catch (const json::parse_error& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
