#pragma once

#include <stdexcept>
#include <string>

namespace axial {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
};

struct FieldMismatch : Error {
    FieldMismatch() : Error("operands belong to different fields") {}
};

struct AlgebraMismatch : Error {
    AlgebraMismatch() : Error("elements belong to different algebras") {}
};

struct CharTwo : Error {
    CharTwo() : Error("characteristic 2 is not supported") {}
};

struct NotMultilinear : Error {
    explicit NotMultilinear(const std::string& var)
        : Error("polynomial is not multilinear: variable '" + var + "' has degree > 1") {}
};

struct NonHomogeneousInput : Error {
    explicit NonHomogeneousInput(const std::string& var)
        : Error("polynomial is not homogeneous in variable '" + var + "'") {}
};

struct UnassignedVariable : Error {
    explicit UnassignedVariable(const std::string& var)
        : Error("no value assigned to variable '" + var + "'") {}
};

struct CoefficientNotReducible : Error {
    explicit CoefficientNotReducible(const std::string& coeff)
        : Error("coefficient " + coeff + " has denominator divisible by the field characteristic") {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(unsigned long long needed, unsigned long long budget)
        : Error("enumeration needs " + std::to_string(needed) + " evaluations, budget is " +
                std::to_string(budget)) {}
};

struct VariableCollision : Error {
    explicit VariableCollision(const std::string& var)
        : Error("direction variable '" + var + "' already occurs in the polynomial") {}
};

struct SortViolation : Error {
    explicit SortViolation(const std::string& msg) : Error(msg) {}
};

struct ZeroVector : Error {
    ZeroVector() : Error("the zero vector is not a valid axis") {}
};

struct NotIdempotent : Error {
    NotIdempotent() : Error("element is not an idempotent") {}
};

struct NotDistinctAxes : Error {
    NotDistinctAxes() : Error("the two axes must be distinct") {}
};

struct NotHalfAxis : Error {
    explicit NotHalfAxis(const std::string& what) : Error("not a half-axis: " + what) {}
};

struct InvalidGeometry : Error {
    explicit InvalidGeometry(const std::string& what) : Error(what) {}
};

// Eigenspaces for 1, 1/2, 0 do not exhaust the algebra.  Carries the residual
// dimension and every eigenvalue of ad_e found over the field.
struct DecompositionIncomplete : Error {
    int residual_dim;
    std::vector<std::string> eigenvalues_found;
    DecompositionIncomplete(int residual, std::vector<std::string> eigs, const std::string& detail)
        : Error(detail), residual_dim(residual), eigenvalues_found(std::move(eigs)) {}
};

}  // namespace axial
