#pragma once

#include <map>
#include <string>
#include <vector>

#include "modelspace/cset.hpp"

namespace modelspace {

/// The fixed whole-grain Petri schema: species S, transitions T, input arcs I,
/// output arcs O with is: I->S, it: I->T, os: O->S, ot: O->T. No equations.
FinCatPtr petri_schema();

inline constexpr int PETRI_S = 0;
inline constexpr int PETRI_T = 1;
inline constexpr int PETRI_I = 2;
inline constexpr int PETRI_O = 3;

/// A Petri net: a C-set on the Petri schema plus display names and the
/// derived input/output multiplicity matrices, indexed [transition][species].
struct PetriNet {
    CSet cs;
    std::vector<std::string> species;
    std::vector<std::string> transitions;
    std::vector<std::vector<int>> in_mat;
    std::vector<std::vector<int>> out_mat;

    int n_species() const { return cs.parts[PETRI_S]; }
    int n_transitions() const { return cs.parts[PETRI_T]; }
    int species_index(const std::string& name) const;
    int transition_index(const std::string& name) const;
};

struct TransitionSpec {
    std::string name;
    std::vector<int> inputs;  // species indices, with multiplicity
    std::vector<int> outputs;
};

PetriNet make_petri(const std::vector<std::string>& species,
                    const std::vector<TransitionSpec>& transitions);

/// Wraps an existing C-set on the Petri schema, deriving the matrices.
/// Empty name lists are replaced by synthesized S0../t0.. names.
PetriNet petri_from_cset(const CSet& cs, std::vector<std::string> species = {},
                         std::vector<std::string> transitions = {});

/// Initial concentrations per species and mass-action rate coefficients per
/// transition; all nonnegative.
struct ParamSet {
    std::vector<double> concentrations;
    std::vector<double> rates;
};

void check_params(const PetriNet& net, const ParamSet& p);

struct Trajectory {
    std::vector<double> times; // strictly increasing
    std::vector<std::vector<double>> states;

    std::vector<double> sample(double t) const; // linear interpolation
};

/// dx_s = sum_t rate_t (out(t,s) - in(t,s)) prod_{s'} x_{s'}^{in(t,s')}.
void mass_action_deriv(const PetriNet& net, const std::vector<double>& rates,
                       const std::vector<double>& x, std::vector<double>& dxdt);

/// Fixed-step RK4, final partial step shortened to land on t1. Throws
/// NonFiniteState if any state stops being finite.
Trajectory simulate(const PetriNet& net, const ParamSet& p, double t0, double t1,
                    double dt = 0.01);

/// Transport parameters along a mono P -> Q: image species/transitions copy
/// their values, everything newly introduced gets 0.
ParamSet params_pushforward(const CSetMorphism& f, const ParamSet& p);

/// Initial concentration for a product state = total times the product of the
/// marginal fractions of its coordinates. `species_coords` gives, per product
/// species, the coordinate name in each stratum.
std::vector<double> prior_product(const std::vector<std::vector<std::string>>& species_coords,
                                  const std::vector<std::map<std::string, double>>& marginals,
                                  double total);

} // namespace modelspace
