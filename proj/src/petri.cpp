#include "modelspace/petri.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace modelspace {

FinCatPtr petri_schema() {
    static FinCatPtr schema = [] {
        FinCatPresentation p;
        p.objects = {"S", "T", "I", "O"};
        p.generators = {{"is", PETRI_I, PETRI_S},
                        {"it", PETRI_I, PETRI_T},
                        {"os", PETRI_O, PETRI_S},
                        {"ot", PETRI_O, PETRI_T}};
        return make_fincat(std::move(p));
    }();
    return schema;
}

int PetriNet::species_index(const std::string& name) const {
    for (size_t i = 0; i < species.size(); ++i)
        if (species[i] == name) return static_cast<int>(i);
    return -1;
}

int PetriNet::transition_index(const std::string& name) const {
    for (size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

void derive_matrices(PetriNet& net) {
    int ns = net.cs.parts[PETRI_S], nt = net.cs.parts[PETRI_T];
    net.in_mat.assign(nt, std::vector<int>(ns, 0));
    net.out_mat.assign(nt, std::vector<int>(ns, 0));
    for (int a = 0; a < net.cs.parts[PETRI_I]; ++a)
        net.in_mat[net.cs.actions[1][a]][net.cs.actions[0][a]]++;
    for (int a = 0; a < net.cs.parts[PETRI_O]; ++a)
        net.out_mat[net.cs.actions[3][a]][net.cs.actions[2][a]]++;
}

} // namespace

PetriNet make_petri(const std::vector<std::string>& species,
                    const std::vector<TransitionSpec>& transitions) {
    PetriNet net;
    net.cs.schema = petri_schema();
    net.cs.parts = {static_cast<int>(species.size()), static_cast<int>(transitions.size()), 0, 0};
    net.cs.actions.resize(4);
    net.species = species;
    for (size_t t = 0; t < transitions.size(); ++t) {
        net.transitions.push_back(transitions[t].name);
        for (int s : transitions[t].inputs) {
            net.cs.actions[0].push_back(s);
            net.cs.actions[1].push_back(static_cast<int>(t));
            net.cs.parts[PETRI_I]++;
        }
        for (int s : transitions[t].outputs) {
            net.cs.actions[2].push_back(s);
            net.cs.actions[3].push_back(static_cast<int>(t));
            net.cs.parts[PETRI_O]++;
        }
    }
    auto errs = validate(net.cs);
    if (!errs.empty()) throw MalformedInput("make_petri: " + errs[0]);
    derive_matrices(net);
    return net;
}

PetriNet petri_from_cset(const CSet& cs, std::vector<std::string> species,
                         std::vector<std::string> transitions) {
    if (!(*cs.schema == *petri_schema()))
        throw MalformedInput("petri_from_cset: not on the Petri schema");
    auto errs = validate(cs);
    if (!errs.empty()) throw MalformedInput("petri_from_cset: " + errs[0]);
    PetriNet net;
    net.cs = cs;
    if (species.empty())
        for (int s = 0; s < cs.parts[PETRI_S]; ++s) species.push_back(fmt::format("S{}", s));
    if (transitions.empty())
        for (int t = 0; t < cs.parts[PETRI_T]; ++t) transitions.push_back(fmt::format("t{}", t));
    if (static_cast<int>(species.size()) != cs.parts[PETRI_S] ||
        static_cast<int>(transitions.size()) != cs.parts[PETRI_T])
        throw MalformedInput("petri_from_cset: name table sizes do not match");
    net.species = std::move(species);
    net.transitions = std::move(transitions);
    derive_matrices(net);
    return net;
}

void check_params(const PetriNet& net, const ParamSet& p) {
    if (static_cast<int>(p.concentrations.size()) != net.n_species() ||
        static_cast<int>(p.rates.size()) != net.n_transitions())
        throw MalformedInput("parameter vector does not match the net");
    for (double v : p.concentrations)
        if (v < 0) throw MalformedInput("negative concentration");
    for (double v : p.rates)
        if (v < 0) throw MalformedInput("negative rate");
}

std::vector<double> Trajectory::sample(double t) const {
    if (times.empty()) throw MalformedInput("sampling an empty trajectory");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    auto it = std::lower_bound(times.begin(), times.end(), t);
    size_t hi = static_cast<size_t>(it - times.begin());
    size_t lo = hi - 1;
    double w = (t - times[lo]) / (times[hi] - times[lo]);
    std::vector<double> out(states[lo].size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = (1.0 - w) * states[lo][i] + w * states[hi][i];
    return out;
}

void mass_action_deriv(const PetriNet& net, const std::vector<double>& rates,
                       const std::vector<double>& x, std::vector<double>& dxdt) {
    int ns = net.n_species(), nt = net.n_transitions();
    dxdt.assign(ns, 0.0);
    for (int t = 0; t < nt; ++t) {
        double flux = rates[t];
        if (flux == 0.0) continue;
        for (int s = 0; s < ns; ++s)
            for (int k = 0; k < net.in_mat[t][s]; ++k) flux *= x[s];
        if (flux == 0.0) continue;
        for (int s = 0; s < ns; ++s) {
            int net_change = net.out_mat[t][s] - net.in_mat[t][s];
            if (net_change != 0) dxdt[s] += flux * net_change;
        }
    }
}

Trajectory simulate(const PetriNet& net, const ParamSet& p, double t0, double t1, double dt) {
    if (!(t1 > t0) || !(dt > 0)) throw MalformedInput("simulate: need t1 > t0 and dt > 0");
    check_params(net, p);
    int ns = net.n_species();
    Trajectory traj;
    std::vector<double> x = p.concentrations;
    std::vector<double> k1(ns), k2(ns), k3(ns), k4(ns), tmp(ns);

    long full_steps = static_cast<long>(std::floor((t1 - t0) / dt + 1e-9));
    double rem = (t1 - t0) - static_cast<double>(full_steps) * dt;
    if (rem < 1e-12) rem = 0.0;

    traj.times.push_back(t0);
    traj.states.push_back(x);
    auto step = [&](double h) {
        mass_action_deriv(net, p.rates, x, k1);
        for (int i = 0; i < ns; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        mass_action_deriv(net, p.rates, tmp, k2);
        for (int i = 0; i < ns; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        mass_action_deriv(net, p.rates, tmp, k3);
        for (int i = 0; i < ns; ++i) tmp[i] = x[i] + h * k3[i];
        mass_action_deriv(net, p.rates, tmp, k4);
        for (int i = 0; i < ns; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (double v : x)
            if (!std::isfinite(v)) throw NonFiniteState("simulation diverged");
    };
    for (long k = 1; k <= full_steps; ++k) {
        step(dt);
        traj.times.push_back(t0 + static_cast<double>(k) * dt);
        traj.states.push_back(x);
    }
    if (rem > 0.0) {
        step(rem);
        traj.times.push_back(t1);
        traj.states.push_back(x);
    }
    return traj;
}

ParamSet params_pushforward(const CSetMorphism& f, const ParamSet& p) {
    if (!is_mono(f)) throw NotMono("params_pushforward requires a monomorphism");
    if (p.concentrations.size() != f.components[PETRI_S].size() ||
        p.rates.size() != f.components[PETRI_T].size())
        throw MalformedInput("params_pushforward: parameter sizes do not match the domain");
    ParamSet q;
    q.concentrations.assign(f.cod.parts[PETRI_S], 0.0);
    q.rates.assign(f.cod.parts[PETRI_T], 0.0);
    for (size_t s = 0; s < p.concentrations.size(); ++s)
        q.concentrations[f.components[PETRI_S][s]] = p.concentrations[s];
    for (size_t t = 0; t < p.rates.size(); ++t)
        q.rates[f.components[PETRI_T][t]] = p.rates[t];
    return q;
}

std::vector<double> prior_product(const std::vector<std::vector<std::string>>& species_coords,
                                  const std::vector<std::map<std::string, double>>& marginals,
                                  double total) {
    for (const auto& m : marginals) {
        double sum = 0;
        for (const auto& [k, v] : m) sum += v;
        if (sum > 1.0 + 1e-9)
            throw MalformedInput("prior_product: marginal sums to more than 1");
    }
    std::vector<double> out;
    for (const auto& coords : species_coords) {
        if (coords.size() != marginals.size())
            throw MalformedInput("prior_product: coordinate arity does not match the marginals");
        double v = total;
        for (size_t i = 0; i < coords.size(); ++i) {
            auto it = marginals[i].find(coords[i]);
            v *= (it == marginals[i].end()) ? 0.0 : it->second;
        }
        out.push_back(v);
    }
    return out;
}

} // namespace modelspace
