#pragma once

#include <stdexcept>
#include <string>

namespace modelspace {

// User-facing errors (bad inputs, unmet preconditions). CLI exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariants. CLI exit code 2.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

struct MalformedInput : Error {
    using Error::Error;
};

// Equalizers of finite functors require a free codomain presentation.
struct NonFreeCodomain : Error {
    using Error::Error;
};

// Chase did not saturate within its round budget (Kan extension may be infinite).
struct ChaseBudgetExceeded : Error {
    using Error::Error;
};

// A cocone handed to transpose() is not natural or not well defined on classes.
struct IllFormedCocone : Error {
    using Error::Error;
};

struct NotMono : Error {
    using Error::Error;
};

struct NonFiniteState : Error {
    using Error::Error;
};

// Model-space traversal needs a root (in-degree-0 shape object).
struct NoRoot : Error {
    using Error::Error;
};

// A workflow box failed at runtime; carries the box id.
struct RuntimeBoxError : Error {
    std::string box;
    RuntimeBoxError(std::string box_id, const std::string& cause)
        : Error("box '" + box_id + "': " + cause), box(std::move(box_id)) {}
};

} // namespace modelspace
