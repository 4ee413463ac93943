#pragma once

#include "tensorlog/formula.hpp"
#include "tensorlog/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tensorlog {

/// One tensor R_m fed into a quantifier contraction.
struct Operand
{
    std::string tensor;        // base predicate, dedup predicate or earlier definition
    std::size_t order = 0;     // arity of that tensor
    std::size_t mode = 0;      // 0-based mode holding the quantified variable
    bool complemented = false; // use the complement tensor (negated relation)

    friend bool operator==(const Operand&, const Operand&) = default;
};

/// R_new(free_args) = min1(Q^{E,M} x_{1,j_1} R_1 ... x_{1,j_M} R_M) for an
/// existential group; for a universal group the operands encode the negated
/// literals and the result is complemented. `layout[p]` names the free
/// argument that the p-th remaining mode of the contraction belongs to, so
/// repeated free variables collapse onto one generalized diagonal.
struct TensorDefinition
{
    std::string name;
    std::vector<std::string> free_args;
    Quantifier quantifier = Quantifier::Exists;
    std::string variable;
    std::vector<Operand> operands;
    std::vector<std::size_t> layout;

    std::size_t quantifier_arity() const { return operands.size(); }
    bool needs_merge() const;

    friend bool operator==(const TensorDefinition&, const TensorDefinition&) = default;
};

struct RootLiteral
{
    std::string ref;
    bool negated = false;

    friend bool operator==(const RootLiteral&, const RootLiteral&) = default;
};

/// Scalar combination of nullary atoms. DNF: min1(sum of products);
/// CNF: product of min1(sums). Negated literals contribute 1 - x.
struct RootExpr
{
    NormalFormMatrix::Kind kind = NormalFormMatrix::Kind::Dnf;
    std::vector<std::vector<RootLiteral>> groups;

    friend bool operator==(const RootExpr&, const RootExpr&) = default;
};

std::string to_string(const RootExpr& root);

struct TensorProgram
{
    std::vector<DedupSpec> dedup;
    std::vector<TensorDefinition> definitions; // each refers only to earlier ones
    RootExpr root;

    friend bool operator==(const TensorProgram&, const TensorProgram&) = default;
};

struct CompileOptions
{
    std::size_t group_cap = default_group_cap;
    /// Reuse the definition of a structurally identical group.
    bool memoize = true;
};

struct FreeArgLayout
{
    std::vector<std::string> args;
    std::vector<std::size_t> layout;
};

/// Concatenates the non-quantified arguments of `inner` in order, keeping
/// the first occurrence of each variable.
FreeArgLayout free_arg_layout(const std::vector<Literal>& inner, const std::string& var);

/// Throws CompileError if `var` does not occur exactly once in every literal.
TensorDefinition compile_exists_group(const std::string& var, const std::vector<Literal>& inner, std::string name);
TensorDefinition compile_forall_group(const std::string& var, const std::vector<Literal>& inner, std::string name);

/// Compiles a closed prenex formula into tensor definitions plus a root.
/// The model is used to validate predicates and constants.
/// Throws CompileError (not prenex, not closed), NormalFormLimitError,
/// ModelError or ArityError.
TensorProgram compile(const FiniteModel& m, const Formula& f, const CompileOptions& options = {});

} // namespace tensorlog
