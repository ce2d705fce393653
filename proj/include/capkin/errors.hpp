#ifndef CAPKIN_ERRORS_HPP
#define CAPKIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace capkin {

/// Base class for all capkin exceptions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent user input (JSON documents, CLI arguments).
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// ---- graph construction -------------------------------------------------

class GraphSpecError : public InputError {
public:
    explicit GraphSpecError(const std::string& msg) : InputError(msg) {}
};

class LoopEdgeError : public GraphSpecError {
public:
    LoopEdgeError(int vertex, std::size_t edge_index)
        : GraphSpecError("loop edge (" + std::to_string(vertex) + "," + std::to_string(vertex) +
                         ") at edges[" + std::to_string(edge_index) + "]; loop edges are not allowed"),
          vertex(vertex), edge_index(edge_index) {}
    int vertex;
    std::size_t edge_index;
};

class DuplicateEdgeError : public GraphSpecError {
public:
    DuplicateEdgeError(int from, int to, std::size_t edge_index)
        : GraphSpecError("duplicate edge (" + std::to_string(from) + "," + std::to_string(to) +
                         ") at edges[" + std::to_string(edge_index) + "]"),
          from(from), to(to), edge_index(edge_index) {}
    int from, to;
    std::size_t edge_index;
};

class NonpositiveCapacityError : public GraphSpecError {
public:
    NonpositiveCapacityError(int compartment, double value)
        : GraphSpecError("compartment " + std::to_string(compartment) +
                         " has nonpositive capacity " + std::to_string(value)),
          compartment(compartment), value(value) {}
    int compartment;
    double value;
};

class DanglingEndpointError : public GraphSpecError {
public:
    DanglingEndpointError(int vertex, std::size_t edge_index, int m)
        : GraphSpecError("edge endpoint " + std::to_string(vertex) + " at edges[" +
                         std::to_string(edge_index) + "] outside [1," + std::to_string(m) + "]"),
          vertex(vertex), edge_index(edge_index) {}
    int vertex;
    std::size_t edge_index;
};

// ---- rates and CRN evaluation -------------------------------------------

/// A user-supplied rate function failed the numerical monotonicity /
/// vanishing-at-zero validation.
class RateValidationError : public Error {
public:
    explicit RateValidationError(const std::string& msg) : Error(msg) {}
};

class NegativeStateError : public Error {
public:
    NegativeStateError(std::size_t coordinate, double value)
        : Error("state coordinate " + std::to_string(coordinate + 1) + " is negative (" +
                std::to_string(value) + ") beyond tolerance"),
          coordinate(coordinate), value(value) {}
    std::size_t coordinate;
    double value;
};

// ---- Petri net -----------------------------------------------------------

class EmptySetError : public Error {
public:
    EmptySetError() : Error("siphon candidate must be a nonempty place set") {}
};

class PlaceCapExceededError : public Error {
public:
    PlaceCapExceededError(int places, int cap)
        : Error("net has " + std::to_string(places) + " places, above the enumeration cap " +
                std::to_string(cap) +
                "; raise the cap, or use the closed-form catalogue for strongly connected "
                "compartmental graphs"),
          places(places), cap(cap) {}
    int places, cap;
};

/// The closed-form siphon catalogue only applies to strongly connected
/// compartmental graphs; callers must fall back to enumeration.
class NotStronglyConnectedError : public Error {
public:
    explicit NotStronglyConnectedError(const std::string& msg) : Error(msg) {}
};

/// A monotonicity assertion found two trajectories out of order.
class OrderViolationError : public Error {
public:
    OrderViolationError(double t, int coordinate, const std::string& msg)
        : Error(msg), t(t), coordinate(coordinate) {}
    double t;
    int coordinate;
};

/// An l1-contraction assertion found the distance between two trajectories
/// growing.
class ExpansionDetectedError : public Error {
public:
    ExpansionDetectedError(double t, const std::string& msg) : Error(msg), t(t) {}
    double t;
};

// ---- dynamics ------------------------------------------------------------

class StateOutOfBoxError : public Error {
public:
    explicit StateOutOfBoxError(const std::string& msg) : Error(msg) {}
};

class BoxViolationError : public Error {
public:
    explicit BoxViolationError(const std::string& msg) : Error(msg) {}
};

class StepSizeUnderflowError : public Error {
public:
    explicit StepSizeUnderflowError(const std::string& msg) : Error(msg) {}
};

class NoConvergenceError : public Error {
public:
    explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

} // namespace capkin

#endif
