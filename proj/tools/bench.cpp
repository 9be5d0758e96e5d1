// Compares the serial reference implementations against the OpenMP paths:
// homomorphism search (branch-split) and wavefront node fitting.

#include <random>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "modelspace/fixtures.hpp"

using namespace modelspace;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

CSet random_graph(const FinCatPtr& schema, int vertices, int edges, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CSet g;
    g.schema = schema;
    g.parts = {vertices, edges};
    g.actions.resize(2);
    std::uniform_int_distribution<int> pick(0, vertices - 1);
    for (int e = 0; e < edges; ++e) {
        g.actions[0].push_back(pick(rng));
        g.actions[1].push_back(pick(rng));
    }
    return g;
}

} // namespace

int main() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    fmt::print("benchmark: serial reference vs OpenMP ({} threads)\n\n", threads);

    // Graph homomorphism search.
    FinCatPresentation gs;
    gs.objects = {"V", "E"};
    gs.generators = {{"src", 1, 0}, {"tgt", 1, 0}};
    auto schema = make_fincat(std::move(gs));
    CSet dom = random_graph(schema, 7, 10, 7);
    CSet cod = random_graph(schema, 8, 24, 11);

    double t0 = now();
    auto serial = hom_search(dom, cod, false, 0, false);
    double t1 = now();
    auto par = hom_search(dom, cod, false, 0, true);
    double t2 = now();
    bool same = serial.size() == par.size();
    for (size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].components == par[i].components;
    fmt::print("hom_search      {:>8} morphisms   serial {:.3f}s   parallel {:.3f}s   {}\n",
               serial.size(), t1 - t0, t2 - t1, same ? "results identical" : "MISMATCH");

    // Wavefront node fitting on the bundled 8-model space.
    auto res = execute(fixtures::exploration_workflow(), fixtures::workflow_inputs());
    const ModelSpace& space = *res.outputs.at("stratify.out").space;
    PetriNet truth_net = space.node_net(space.node_index("(SIRD,2)"));
    ParamSet truth = fixtures::sird2_truth(truth_net);
    Trajectory tr = simulate(truth_net, truth, 0.0, 50.0, 0.01);
    TimeSeries data;
    data.columns = space.meta[space.node_index("(SIRD,2)")].obs.cod_species;
    const ObservableMap& obs = space.meta[space.node_index("(SIRD,2)")].obs;
    for (int k = 1; k <= 25; ++k) {
        double t = 2.0 * k;
        auto x = tr.sample(t);
        std::vector<double> row;
        for (const auto& c : data.columns) {
            double v = 0;
            for (size_t s = 0; s < obs.morphism.components[PETRI_S].size(); ++s)
                if (obs.cod_species[obs.morphism.components[PETRI_S][s]] == c) v += x[s];
            row.push_back(v);
        }
        data.times.push_back(t);
        data.values.push_back(std::move(row));
    }

    FitConfig cfg = fixtures::experiment_config();
    cfg.max_evals = 160;
    cfg.restarts = 1;
    cfg.dt = 0.05;

    cfg.threads = 1;
    t0 = now();
    FitReport serial_report = select_models(space, data, cfg);
    t1 = now();
    cfg.threads = threads;
    FitReport par_report = select_models(space, data, cfg);
    t2 = now();
    same = true;
    for (size_t i = 0; i < serial_report.nodes.size(); ++i)
        same = same && serial_report.nodes[i].raw_loss == par_report.nodes[i].raw_loss;
    fmt::print("select (8 fits) {:>8} nodes       serial {:.3f}s   parallel {:.3f}s   {}\n",
               serial_report.nodes.size(), t1 - t0, t2 - t1,
               same ? "results identical" : "MISMATCH");
    return same ? 0 : 1;
}
