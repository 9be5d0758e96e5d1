#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "modelspace/select.hpp"

namespace modelspace {

enum class PortType { DiagramOverX, Morphism, Span, CSetArtifact, Base };

std::string port_type_name(PortType t);
PortType parse_port_type(const std::string& s);

/// A span of typed diagrams: an apex and two legs with their codomains, used
/// by the glue (pushout) box. Whether the legs actually share the apex and
/// whether the left codomain matches the wired base are runtime checks.
struct TypedSpan {
    TypedDiagram apex;
    std::vector<NodeMeta> apex_meta;
    DiagramMorphism left;
    DiagramMorphism right;
    ModelSpace left_cod;
    ModelSpace right_cod;
};

/// A diagram morphism with typed, named endpoints, as loaded from a file.
struct MorphismArtifact {
    DiagramMorphism m;
    ModelSpace dom_space;
    ModelSpace cod_space;
};

struct Artifact {
    PortType type = PortType::DiagramOverX;
    std::shared_ptr<ModelSpace> space;
    std::shared_ptr<MorphismArtifact> morphism;
    std::shared_ptr<TypedSpan> span;
    std::shared_ptr<PetriNet> net; // CSetArtifact / Base
};

struct Box {
    std::string id;
    std::string op; // load | glue | coproduct | typed_product | limit | coequalizer | leftkan
    nlohmann::json config;
};

struct Wire {
    std::string from_box, from_port;
    std::string to_box, to_port;
};

struct InputDecl {
    PortType type = PortType::DiagramOverX;
    std::string file;
};

struct Workflow {
    std::vector<Box> boxes;
    std::vector<Wire> wires;
    std::map<std::string, InputDecl> inputs;
    std::vector<std::string> outputs; // "box.port"
};

struct PortSig {
    std::map<std::string, PortType> ins;
    std::map<std::string, PortType> outs;
};

/// Port signature of a box; load boxes read their output type from the
/// declared input they reference.
PortSig box_signature(const Workflow& w, const Box& b);

/// Static checks only: known ops, DAG wiring, each in-port wired exactly
/// once, and equal types on wire endpoints. Conditions that depend on the
/// artifacts themselves (shared span apex, matching bases) stay runtime
/// errors.
std::vector<std::string> typecheck(const Workflow& w);

struct WorkflowResult {
    std::map<std::string, Artifact> outputs; // keyed by "box.port"
    std::vector<std::string> log;
};

/// Eager topological-order evaluation. Throws RuntimeBoxError with the box id
/// on any runtime failure, MalformedInput if typecheck fails or an input is
/// missing.
WorkflowResult execute(const Workflow& w, const std::map<std::string, Artifact>& inputs);

} // namespace modelspace
