#pragma once

#include "modelspace/workflow.hpp"

namespace modelspace::fixtures {

// Plain compartmental nets (no transport loops); the SIR arc tables follow
// the standard mass-action reading inf: S+I -> 2I, rec: I -> R.
PetriNet sir();
PetriNet sirs();
PetriNet sird();
PetriNet sirsd();
PetriNet death_net(); // {I, D} with death: I -> D

/// Stratification base: one species with an interaction transition (2 in,
/// 2 out), a unary disease transition and a unary transport transition.
PetriNet apex_x();

// Typed variants carrying a reflexive transport transition per state, ready
// to be placed over apex_x.
PetriNet sir_t();
PetriNet sirs_t();
PetriNet sird_t();
PetriNet sirsd_t();
PetriNet death_net_t(); // {I, D} with death and the D transport loop

/// Geography model with n <= 3 cities: per-city interaction and disease
/// loops, transport along the chain of cities.
PetriNet city(int n);

/// Morphism given on species and transitions by name; arcs are matched per
/// transition, first fit in order. Throws when no natural extension exists.
CSetMorphism petri_morphism(const PetriNet& dom, const PetriNet& cod,
                            const std::vector<int>& species_map,
                            const std::vector<int>& transition_map);

/// Same, resolving species/transitions of dom by name in cod.
CSetMorphism inclusion_by_names(const PetriNet& dom, const PetriNet& cod);

/// Typing of a fixture net into apex_x; transition_types holds the apex
/// transition index (0 = interaction, 1 = disease, 2 = transport) per
/// transition of the net.
CSetMorphism typing_to_x(const PetriNet& net, const std::vector<int>& transition_types);

// Typed model spaces over apex_x, with node names and identity observables.
ModelSpace disease_path2();           // SIR -> SIRS
ModelSpace disease_path3();           // SIR -> SIRS -> SIRSD
ModelSpace geography_path(int n);     // "1" -> ... -> "n", 1..3 cities
ModelSpace single_node_space(const PetriNet& net, const std::vector<int>& transition_types,
                             const std::string& node_name);

/// The death-embellishment span: apex is the single-state-I diagram, the left
/// leg picks the SIR node of disease_path2, the right leg the death net.
TypedSpan death_span();

/// The model-exploration workflow: glue the death span onto the disease
/// path, add the original path back by coproduct, stratify by the geography
/// path. Output nodes are renamed to (disease,cities) pairs.
Workflow exploration_workflow();

/// Input artifacts the workflow expects, keyed as its load boxes name them.
std::map<std::string, Artifact> workflow_inputs();

/// Ground-truth parameters for the two-city SIRD node: infection 0.5,
/// recovery 0.25, death 0.05, transport 0.1; city X starts at (S, I) =
/// (0.495, 0.005) and city Y at S = 0.5 (population fractions).
ParamSet sird2_truth(const PetriNet& net);

/// Fit configuration used by the desk-scale experiment.
FitConfig experiment_config();

} // namespace modelspace::fixtures
