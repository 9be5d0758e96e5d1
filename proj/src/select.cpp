#include "modelspace/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modelspace {

ObservableMap identity_observable(const PetriNet& net) {
    ObservableMap obs;
    obs.morphism = identity_morphism(net.cs);
    obs.cod_species = net.species;
    return obs;
}

PetriNet ModelSpace::node_net(int i) const {
    return petri_from_cset(space.diagram.ob[i], meta[i].species, meta[i].transitions);
}

int ModelSpace::node_index(const std::string& name) const {
    return space.diagram.shape->object_index(name);
}

void validate_model_space(const ModelSpace& ms) {
    validate_typed_diagram(ms.space);
    if (!(*ms.space.base.schema == *petri_schema()))
        throw MalformedInput("model space must be typed over the Petri schema");
    if (ms.meta.size() != ms.space.diagram.ob.size())
        throw MalformedInput("model space: meta arity mismatch");
    for (size_t i = 0; i < ms.meta.size(); ++i) {
        const NodeMeta& m = ms.meta[i];
        const CSet& net = ms.space.diagram.ob[i];
        if (static_cast<int>(m.species.size()) != net.parts[PETRI_S] ||
            static_cast<int>(m.transitions.size()) != net.parts[PETRI_T])
            throw MalformedInput(fmt::format("model space: name tables wrong at node {}", i));
        if (!(m.obs.morphism.dom == net) || !is_natural(m.obs.morphism))
            throw MalformedInput(fmt::format("model space: bad observable at node {}", i));
        if (m.obs.cod_species.size() !=
            static_cast<size_t>(m.obs.morphism.cod.parts[PETRI_S]))
            throw MalformedInput(fmt::format("model space: observable names wrong at node {}", i));
    }
}

// ---------------------------------------------------------------------------
// Loss
// ---------------------------------------------------------------------------

namespace {

// Column c of the data aggregates the model species in the fiber over the
// reference state named c; absent names aggregate to zero.
std::vector<std::vector<int>> fibers_for_columns(const ObservableMap& obs,
                                                 const std::vector<std::string>& columns) {
    std::vector<std::vector<int>> fib(columns.size());
    for (size_t c = 0; c < columns.size(); ++c) {
        for (size_t s = 0; s < obs.morphism.components[PETRI_S].size(); ++s)
            if (obs.cod_species[obs.morphism.components[PETRI_S][s]] == columns[c])
                fib[c].push_back(static_cast<int>(s));
    }
    return fib;
}

} // namespace

double loss(const TimeSeries& y, const Trajectory& yhat, const ObservableMap& obs) {
    if (y.times.empty()) throw MalformedInput("loss: empty data");
    if (y.times.front() < yhat.times.front() - 1e-9 ||
        y.times.back() > yhat.times.back() + 1e-9)
        throw MalformedInput("loss: data times fall outside the trajectory (time grid mismatch)");
    auto fib = fibers_for_columns(obs, y.columns);
    double acc = 0.0;
    for (size_t r = 0; r < y.times.size(); ++r) {
        std::vector<double> x = yhat.sample(y.times[r]);
        for (size_t c = 0; c < y.columns.size(); ++c) {
            double pred = 0.0;
            for (int s : fib[c]) pred += x[s];
            double gap = y.values[r][c] - pred;
            acc += gap * gap;
        }
    }
    return acc;
}

double loss_lower(const Trajectory& yhat, const ObservableMap& obs) {
    std::vector<int> fiber;
    bool has_i = false;
    for (size_t r = 0; r < obs.cod_species.size(); ++r)
        if (obs.cod_species[r] == "I") has_i = true;
    if (!has_i) throw MalformedInput("loss_lower: reference has no state named I");
    for (size_t s = 0; s < obs.morphism.components[PETRI_S].size(); ++s)
        if (obs.cod_species[obs.morphism.components[PETRI_S][s]] == "I")
            fiber.push_back(static_cast<int>(s));
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& x : yhat.states) {
        double v = 0.0;
        for (int s : fiber) v += x[s];
        peak = std::max(peak, v);
    }
    return peak;
}

// ---------------------------------------------------------------------------
// Traversal order
// ---------------------------------------------------------------------------

std::vector<int> bfs_levels(const Diagram& space) {
    const FinCatPresentation& shape = *space.shape;
    size_t n = shape.objects.size();
    std::vector<int> indeg(n, 0);
    for (const auto& g : shape.generators)
        if (g.src != g.tgt) indeg[g.tgt]++;
    std::vector<int> level(n, -1);
    std::queue<int> q;
    for (size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) {
            level[i] = 0;
            q.push(static_cast<int>(i));
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& g : shape.generators)
            if (g.src == v && level[g.tgt] < 0) {
                level[g.tgt] = level[v] + 1;
                q.push(g.tgt);
            }
    }
    for (size_t i = 0; i < n; ++i)
        if (level[i] < 0)
            throw NoRoot(fmt::format("node '{}' is unreachable from any root", shape.objects[i]));
    return level;
}

std::vector<int> bfs_order(const Diagram& space) {
    std::vector<int> level = bfs_levels(space);
    std::vector<int> order(level.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return level[a] < level[b]; });
    return order;
}

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

namespace {

constexpr double LOG_FLOOR = 1e-12;
constexpr double INF = std::numeric_limits<double>::infinity();

struct Objective {
    const PetriNet& net;
    const ObservableMap& obs;
    const TimeSeries& data;
    const FitConfig& cfg;
    double t1;
    int evals = 0;

    double at_params(const ParamSet& p) {
        ++evals;
        try {
            Trajectory tr = simulate(net, p, cfg.t0, t1, cfg.dt);
            return loss(data, tr, obs);
        } catch (const NonFiniteState&) {
            return INF;
        }
    }

    ParamSet decode(const std::vector<double>& theta) const {
        ParamSet p;
        int ns = net.n_species();
        p.concentrations.assign(theta.begin(), theta.begin() + ns);
        p.rates.assign(theta.begin() + ns, theta.end());
        for (double& v : p.concentrations) v = std::exp(v);
        for (double& v : p.rates) v = std::exp(v);
        return p;
    }

    double at(const std::vector<double>& theta) { return at_params(decode(theta)); }
};

std::vector<double> encode(const ParamSet& p) {
    std::vector<double> theta;
    for (double v : p.concentrations) theta.push_back(std::log(std::max(v, LOG_FLOOR)));
    for (double v : p.rates) theta.push_back(std::log(std::max(v, LOG_FLOOR)));
    return theta;
}

struct BestTracker {
    ParamSet params;
    double loss = INF;
    void offer(const ParamSet& p, double l) {
        if (l < loss) {
            loss = l;
            params = p;
        }
    }
};

void nelder_mead(Objective& obj, const std::vector<double>& theta0, int budget,
                 BestTracker& best) {
    size_t n = theta0.size();
    if (n == 0 || budget <= 0) return;
    int start = obj.evals;
    auto left = [&] { return budget - (obj.evals - start); };

    std::vector<std::vector<double>> x(n + 1, theta0);
    std::vector<double> fx(n + 1);
    for (size_t i = 1; i <= n; ++i) x[i][i - 1] += 0.5;
    for (size_t i = 0; i <= n && left() > 0; ++i) {
        fx[i] = obj.at(x[i]);
        best.offer(obj.decode(x[i]), fx[i]);
    }

    while (left() > 0) {
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> x2(n + 1);
        std::vector<double> f2(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            x2[i] = x[idx[i]];
            f2[i] = fx[idx[i]];
        }
        x.swap(x2);
        fx.swap(f2);
        if (std::abs(fx[n] - fx[0]) <= 1e-12 * (1.0 + std::abs(fx[0]))) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) centroid[k] += x[i][k] / static_cast<double>(n);

        auto point = [&](double coef) {
            std::vector<double> p(n);
            for (size_t k = 0; k < n; ++k) p[k] = centroid[k] + coef * (x[n][k] - centroid[k]);
            return p;
        };
        auto eval = [&](const std::vector<double>& p) {
            double f = obj.at(p);
            best.offer(obj.decode(p), f);
            return f;
        };

        std::vector<double> xr = point(-1.0);
        double fr = eval(xr);
        if (fr < fx[0] && left() > 0) {
            std::vector<double> xe = point(-2.0);
            double fe = eval(xe);
            if (fe < fr) {
                x[n] = xe;
                fx[n] = fe;
            } else {
                x[n] = xr;
                fx[n] = fr;
            }
        } else if (fr < fx[n - 1]) {
            x[n] = xr;
            fx[n] = fr;
        } else if (left() > 0) {
            bool outside = fr < fx[n];
            std::vector<double> xc = point(outside ? -0.5 : 0.5);
            double fc = eval(xc);
            if (fc < std::min(fr, fx[n])) {
                x[n] = xc;
                fx[n] = fc;
            } else {
                for (size_t i = 1; i <= n && left() > 0; ++i) {
                    for (size_t k = 0; k < n; ++k) x[i][k] = x[0][k] + 0.5 * (x[i][k] - x[0][k]);
                    fx[i] = eval(x[i]);
                }
            }
        }
    }
}

void fd_gradient_descent(Objective& obj, const std::vector<double>& theta0, int budget,
                         BestTracker& best) {
    size_t n = theta0.size();
    if (n == 0 || budget <= 0) return;
    int start = obj.evals;
    auto left = [&] { return budget - (obj.evals - start); };

    std::vector<double> theta = theta0;
    double f = obj.at(theta);
    best.offer(obj.decode(theta), f);
    double h = 1e-4;
    while (left() > static_cast<int>(2 * n)) {
        std::vector<double> grad(n);
        for (size_t k = 0; k < n; ++k) {
            std::vector<double> hi = theta, lo = theta;
            hi[k] += h;
            lo[k] -= h;
            grad[k] = (obj.at(hi) - obj.at(lo)) / (2 * h);
        }
        double norm = 0;
        for (double g : grad) norm += g * g;
        norm = std::sqrt(norm);
        if (!(norm > 1e-14)) break;
        double step = 0.5;
        bool improved = false;
        while (step > 1e-8 && left() > 0) {
            std::vector<double> cand = theta;
            for (size_t k = 0; k < n; ++k) cand[k] -= step * grad[k] / norm;
            double fc = obj.at(cand);
            best.offer(obj.decode(cand), fc);
            if (fc < f) {
                theta = cand;
                f = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
}

} // namespace

FitOutcome fit_node(const PetriNet& net, const ObservableMap& obs, const TimeSeries& data,
                    const ParamSet& init, const FitConfig& cfg) {
    check_params(net, init);
    if (data.times.empty()) throw MalformedInput("fit_node: empty data");
    Objective obj{net, obs, data, cfg, data.times.back(), 0};

    BestTracker best;
    best.offer(init, obj.at_params(init)); // the exact start is always a candidate

    int runs = 1 + std::max(0, cfg.restarts);
    int per_run = cfg.max_evals > 0 ? std::max(1, cfg.max_evals / runs) : 0;
    std::vector<double> theta0 = encode(init);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> jitter(0.0, 1.0);

    for (int run = 0; run < runs && per_run > 0; ++run) {
        std::vector<double> start = theta0;
        if (run > 0)
            for (double& v : start) v += jitter(rng);
        if (cfg.optimizer == FitConfig::Optimizer::nelder_mead)
            nelder_mead(obj, start, per_run, best);
        else
            fd_gradient_descent(obj, start, per_run, best);
    }
    return FitOutcome{best.params, best.loss, obj.evals};
}

// ---------------------------------------------------------------------------
// Model selection
// ---------------------------------------------------------------------------

namespace {

std::uint64_t node_seed(std::uint64_t seed, int node) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(node + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

FitReport select_models(const ModelSpace& ms, const TimeSeries& data, const FitConfig& cfg) {
    validate_model_space(ms);
    const Diagram& dia = ms.space.diagram;
    const FinCatPresentation& shape = *dia.shape;
    size_t n = shape.objects.size();
    if (n == 0) throw MalformedInput("select: empty model space");

    std::vector<int> level = bfs_levels(dia);
    std::vector<int> order = bfs_order(dia);

    FitReport report;
    report.seed = cfg.seed;
    report.reference =
        cfg.reference_node.empty() ? shape.objects[order[0]] : cfg.reference_node;
    int ref = shape.object_index(report.reference);
    if (ref < 0)
        throw MalformedInput(fmt::format("reference node '{}' not in the space", report.reference));

    std::vector<PetriNet> nets;
    for (size_t i = 0; i < n; ++i) nets.push_back(ms.node_net(static_cast<int>(i)));

    std::vector<NodeFit> fits(n);
    std::vector<char> done(n, 0);

    // Wavefront over BFS levels: nodes in a level only warm-start from
    // strictly earlier levels, so they are independent.
    int max_level = *std::max_element(level.begin(), level.end());
    for (int lv = 0; lv <= max_level; ++lv) {
        std::vector<int> wave;
        for (size_t i = 0; i < n; ++i)
            if (level[i] == lv) wave.push_back(static_cast<int>(i));

        auto fit_one = [&](int node) {
            const PetriNet& net = nets[node];
            const NodeMeta& meta = ms.meta[node];

            // Warm start: best pushforward over in-edges from earlier levels.
            ParamSet init;
            std::string source = "prior";
            double init_loss = INF;
            FitConfig ncfg = cfg;
            ncfg.seed = node_seed(cfg.seed, node);
            Objective probe{net, meta.obs, data, ncfg, data.times.back(), 0};
            for (size_t g = 0; g < shape.generators.size(); ++g) {
                const Generator& gen = shape.generators[g];
                if (gen.tgt != node || level[gen.src] >= lv || !done[gen.src]) continue;
                if (!is_mono(dia.hom[g])) continue;
                ParamSet cand = params_pushforward(dia.hom[g], fits[gen.src].best);
                double l = probe.at_params(cand);
                if (l < init_loss) {
                    init_loss = l;
                    init = cand;
                    source = "edge:" + gen.name;
                }
            }
            if (source == "prior") {
                init.concentrations.assign(net.n_species(),
                                           cfg.prior_total / std::max(1, net.n_species()));
                if (!meta.species_coords.empty() && !cfg.prior_marginals.empty() &&
                    meta.species_coords[0].size() == cfg.prior_marginals.size())
                    init.concentrations =
                        prior_product(meta.species_coords, cfg.prior_marginals, cfg.prior_total);
                init.rates.assign(net.n_transitions(), cfg.root_rate_init);
            }

            FitOutcome out = fit_node(net, meta.obs, data, init, ncfg);
            NodeFit nf;
            nf.node = shape.objects[node];
            nf.best = out.best;
            nf.raw_loss = out.loss;
            nf.warm_start = source;
            fits[node] = std::move(nf);
        };

        if (cfg.threads > 1 && wave.size() > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.threads)
#endif
            for (size_t w = 0; w < wave.size(); ++w) fit_one(wave[w]);
        } else {
            for (int node : wave) fit_one(node);
        }
        for (int node : wave) done[node] = 1;
    }

    for (size_t k = 0; k < order.size(); ++k) fits[order[k]].order_index = static_cast<int>(k);
    double ref_loss = fits[ref].raw_loss;
    for (auto& f : fits)
        f.normalized = ref_loss > 0 ? f.raw_loss / ref_loss : (f.raw_loss == 0 ? 1.0 : INF);

    for (size_t g = 0; g < shape.generators.size(); ++g) {
        const Generator& gen = shape.generators[g];
        if (fits[gen.tgt].raw_loss > fits[gen.src].raw_loss * (1 + 1e-12) + 1e-15) {
            report.audit.push_back({gen.name, shape.objects[gen.src], shape.objects[gen.tgt],
                                    fits[gen.src].raw_loss, fits[gen.tgt].raw_loss});
        }
    }
    report.nodes = std::move(fits);
    return report;
}

} // namespace modelspace
