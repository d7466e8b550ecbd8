#pragma once

#include "drb/aggregation.hpp"
#include "drb/bounds.hpp"
#include "drb/distortion.hpp"
#include "drb/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace drb {

/// Uncertainty-set choices a run can be configured with. Wasserstein epsilon
/// is a transport radius; the other three epsilons are divergence budgets.
struct WassersteinUncertainty {
    double epsilon;
    std::optional<double> lipschitz_k;  // default: aggregation's K
    std::optional<double> beta_norm;    // default: aggregation's ||beta||_b
};
struct MahalanobisUncertainty {
    std::vector<double> q_diag;
    double epsilon;
};
struct SeparableUncertainty {
    std::vector<BregmanGenerator> phis;
    double epsilon;
    std::vector<double> beta;
};
struct ComposableUncertainty {
    BregmanGenerator phi;
    double epsilon;
};
using UncertaintySpec = std::variant<WassersteinUncertainty, MahalanobisUncertainty,
                                     SeparableUncertainty, ComposableUncertainty>;

/// One fully validated run: reference model, aggregation map, distortion
/// weight, uncertainty set and numeric controls. Built only by the loader,
/// which validates the schema before any computation starts.
struct RunConfig {
    ReferenceModel reference;
    AggregationSpec aggregation;
    DistortionWeight gamma;
    UncertaintySpec uncertainty;
    std::size_t grid_m = 10000;
    std::size_t mc_samples = 100000;
    std::uint64_t seed = 42;
};

RunConfig load_run_config(const nlohmann::json& j);
RunConfig load_run_config_file(const std::string& path);

/// Monte Carlo draw + aggregation + empirical quantile grid for a config.
struct PipelineData {
    DiscreteCloud samples;
    std::vector<double> aggregated;
    QuantileGrid f_agg;
};

PipelineData run_pipeline(const RunConfig& config);

/// Dispatch on the configured uncertainty set and produce the bound report.
BoundReport compute_bounds(const RunConfig& config, const PipelineData& data);

/// Canonical JSON for a bound report: sorted keys, floats at 17 significant
/// digits so re-reading and re-emitting is byte-stable.
nlohmann::json bound_report_to_json(const BoundReport& report, bool include_curves = false);

/// Serialize a double with 17 significant digits (shortest round-trip form is
/// deliberately not used; fixed width keeps output canonical).
std::string canonical_double(double v);

} // namespace drb
