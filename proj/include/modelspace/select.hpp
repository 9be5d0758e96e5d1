#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modelspace/diagram.hpp"
#include "modelspace/petri.hpp"

namespace modelspace {

/// Aggregation of a model's states onto a reference disease net: the value of
/// reference state r is the sum over the model species in the fiber over r.
struct ObservableMap {
    CSetMorphism morphism;                // model net -> reference net, species-total
    std::vector<std::string> cod_species; // reference state names
};

ObservableMap identity_observable(const PetriNet& net);

/// Display names and observation data carried per model-space node.
struct NodeMeta {
    std::vector<std::string> species;
    std::vector<std::string> transitions;
    ObservableMap obs;
    // For product-built nodes: per species, its coordinate name in each
    // stratum (base coordinate dropped). Used for prior initial guesses.
    std::vector<std::vector<std::string>> species_coords;
};

/// A model space ready for selection: a typed diagram over the Petri schema
/// plus per-node names and observables.
struct ModelSpace {
    TypedDiagram space;
    std::vector<NodeMeta> meta;

    PetriNet node_net(int i) const;
    int node_index(const std::string& name) const;
    const std::string& node_name(int i) const { return space.diagram.shape->objects[i]; }
};

void validate_model_space(const ModelSpace& ms);

/// Observed data: named columns sampled at increasing times.
struct TimeSeries {
    std::vector<double> times;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values; // [row][column]
};

/// Sum over samples and reference states of the squared gap between the data
/// and the aggregated prediction. Reference states missing from the model's
/// observable aggregate to 0.
double loss(const TimeSeries& y, const Trajectory& yhat, const ObservableMap& obs);

/// Peak aggregated infected concentration over the trajectory samples. Not
/// monotone under parameter pushforward along monos, so it cannot drive the
/// warm-start traversal; exposed for comparison only.
double loss_lower(const Trajectory& yhat, const ObservableMap& obs);

/// Shortest-distance-from-a-root order: nodes sorted by (BFS level, id).
/// Throws NoRoot when some node is unreachable from the in-degree-0 nodes.
std::vector<int> bfs_order(const Diagram& space);
std::vector<int> bfs_levels(const Diagram& space);

struct FitConfig {
    enum class Optimizer { nelder_mead, fd_gradient };
    Optimizer optimizer = Optimizer::nelder_mead;
    int max_evals = 2000; // total objective evaluations per node
    int restarts = 3;     // seeded random restarts (sharing the budget)
    std::uint64_t seed = 0;
    double dt = 0.01;
    double t0 = 0.0;
    std::string reference_node; // empty: first node in BFS order
    int threads = 1;            // >1 fits nodes of a BFS level concurrently
    double root_rate_init = 0.5;
    std::vector<std::map<std::string, double>> prior_marginals;
    double prior_total = 1.0;
};

struct FitOutcome {
    ParamSet best;
    double loss = 0.0;
    int evals = 0;
};

/// Minimizes the loss over log-transformed parameters starting from `init`,
/// plus seeded restarts. The exact `init` point is always a candidate, so the
/// result is never worse than the loss at `init`. Non-finite simulations are
/// penalized with an infinite loss, never a crash.
FitOutcome fit_node(const PetriNet& net, const ObservableMap& obs, const TimeSeries& data,
                    const ParamSet& init, const FitConfig& cfg);

struct NodeFit {
    std::string node;
    ParamSet best;
    double raw_loss = 0.0;
    double normalized = 0.0;
    int order_index = -1;
    std::string warm_start; // "prior" or "edge:<generator>"
};

struct AuditEntry {
    std::string edge;
    std::string src;
    std::string tgt;
    double loss_src = 0.0;
    double loss_tgt = 0.0;
};

struct FitReport {
    std::string reference;
    std::uint64_t seed = 0;
    std::vector<NodeFit> nodes;     // in shape-object order
    std::vector<AuditEntry> audit;  // edges where the loss increased
};

/// Best-first traversal of a model space: BFS order, warm starts pushed
/// forward along monos from earlier levels, prior-based guesses at roots,
/// and an audit of edges whose fitted loss increased.
FitReport select_models(const ModelSpace& ms, const TimeSeries& data, const FitConfig& cfg);

} // namespace modelspace
