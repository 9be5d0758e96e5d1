#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "modelspace/workflow.hpp"

namespace modelspace {

using json = nlohmann::json;

// Presented categories and functors
json to_json(const FinCatPresentation& p);
FinCatPresentation fincat_from_json(const json& j);
json to_json(const FinFunctor& f);
FinFunctor functor_from_json(const json& j); // dom/cod inline
FinFunctor functor_from_json(const json& j, FinCatPtr dom, FinCatPtr cod);

// C-sets and morphisms. Schemas serialize as the name "petri" when they
// coincide with the Petri schema, otherwise inline.
json to_json(const CSet& x);
CSet cset_from_json(const json& j);
json components_to_json(const FinCatPresentation& schema,
                        const std::vector<std::vector<int>>& components);
std::vector<std::vector<int>> components_from_json(const FinCatPresentation& schema,
                                                   const json& j);

// Diagrams
json to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);
json to_json(const TypedDiagram& t);
TypedDiagram typed_diagram_from_json(const json& j);

// Model spaces and workflow artifacts
json to_json(const NodeMeta& m);
NodeMeta node_meta_from_json(const json& j, const CSet& node_net);
json to_json(const ModelSpace& ms);
ModelSpace model_space_from_json(const json& j);
json to_json(const TypedSpan& s);
TypedSpan span_from_json(const json& j);
json to_json(const MorphismArtifact& m);
MorphismArtifact morphism_artifact_from_json(const json& j);

// Petri nets and parameters (by-name keying)
json to_json(const PetriNet& net);
PetriNet petri_from_json(const json& j);
json params_to_json(const ParamSet& p, const PetriNet& net);
ParamSet params_from_json(const json& j, const PetriNet& net);

// Selection
FitConfig fit_config_from_json(const json& j);
json to_json(const FitReport& r, const ModelSpace& ms);

// Workflows
json to_json(const Workflow& w);
Workflow workflow_from_json(const json& j);

// CSV / DOT text formats
std::string timeseries_to_csv(const TimeSeries& ts);
TimeSeries timeseries_from_csv(const std::string& text);
std::string trajectory_csv(const Trajectory& tr, const std::vector<double>& at_times,
                           const ObservableMap& obs, const std::vector<std::string>& columns);
std::string loss_table_csv(const FitReport& r);
std::string shape_to_dot(const FinCatPresentation& shape);

// Files
json load_json_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace modelspace
