#ifndef OLG_HARNESS_HPP
#define OLG_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "olg/conditions.hpp"
#include "olg/operators.hpp"
#include "olg/orlicz.hpp"

#include "json.hpp"

namespace olg {

struct GenParams {
    std::size_t max_slabs = 16;    // hard cap 1000
    double max_slab_len = 2.0;
    double max_value = 3.0;
    std::size_t grid_cells = 8;    // per axis, hard cap 512
};

StepFunction generate_step(std::uint64_t seed, const GenParams& p = {});
StepFunction generate_decreasing_step(std::uint64_t seed, const GenParams& p = {});
// Nonincreasing profile for kernels k(x+y) etc.
StepFunction generate_decreasing_kernel_profile(std::uint64_t seed, const GenParams& p = {});
Grid2DKernel generate_grid_kernel(std::uint64_t seed, const GenParams& p = {});

// Per-trial RNG stream derived from (seed, trial index).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct NormSpec {
    NFunction phi;
    Weight u;
};

struct OperatorSpec {
    enum class Kind {
        identity,
        zero,
        averaging,
        hardy_I,
        hardy_I2,
        convolution,
        kernel,
        associate,
        s_transform,
        h1,
        h2
    };
    Kind kind = Kind::identity;
    std::optional<StepFunction> conv_kernel;
    std::optional<Kernel> kernel;
    std::shared_ptr<HardyKernels> hardy;
};

/// T f as a function of x (exact step output where the data allows it).
PosFunction apply(const OperatorSpec& op, const PosFunction& f,
                  const QuadratureSpec& q = {});

struct BestConstant {
    double estimate = 0.0; // sup of ratios; lower bound on the operator norm
    std::vector<double> ratios;
    std::vector<std::string> notes;
};

BestConstant estimate_best_constant(const OperatorSpec& op, const NormSpec& rho1,
                                    const NormSpec& rho2,
                                    const std::vector<PosFunction>& family,
                                    const GaugeNormOptions& opt = {});

struct TrialRow {
    int trial = 0;
    double probe = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // (rhs - lhs) / max(rhs, lhs, 1e-300)
    std::string verdict;
};

struct SuiteResult {
    std::string suite;
    int trials = 0;
    double worst_slack = 0.0;
    bool pass = false;
    std::vector<TrialRow> rows;
    std::vector<std::string> notes;
};

struct Scenario {
    std::string name;
    std::string suite;
    std::uint64_t seed = 1;
    int trials = 20;
    int probes = 20;
    std::string expect = "pass"; // or "divergent"
    nlohmann::json inputs;       // suite-specific descriptors
};

/// Suites: oneil2, hlp_chain, majorization16, oneil_kernel_bound, sandwich,
/// tighter_bound, growth_theorem11, kantorovich, hls_v_prime.
SuiteResult verify_inequality_suite(const Scenario& scenario);

struct RunOutcome {
    int exit_code = 0;
    std::vector<SuiteResult> results;
};

RunOutcome run_scenarios(const nlohmann::json& config,
                         const std::filesystem::path& out_dir);
RunOutcome run_scenario_file(const std::filesystem::path& config_path,
                             const std::filesystem::path& out_dir);

std::string suite_csv(const std::string& scenario_name, const SuiteResult& r);
nlohmann::json suite_json(const SuiteResult& r);

} // namespace olg

#endif
