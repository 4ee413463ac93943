#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tensorlog {

/// A constant (lowercase-led) or a variable (uppercase-led).
struct Term
{
    enum class Kind { Constant, Variable };

    Kind kind = Kind::Variable;
    std::string name;

    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

    bool is_variable() const { return kind == Kind::Variable; }

    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Literal
{
    std::string predicate;
    std::vector<Term> args;
    bool negated = false;

    std::size_t arity() const { return args.size(); }
    Literal negate() const;
    /// Number of argument positions holding `var`.
    std::size_t occurrences(const std::string& var) const;
    bool mentions(const std::string& var) const { return occurrences(var) > 0; }

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

enum class Quantifier { Exists, Forall };

/// Immutable first-order formula tree. Copies share structure.
class Formula
{
public:
    enum class Kind { Literal, Not, And, Or, Exists, Forall };

    static Formula literal(Literal lit);
    static Formula negation(Formula body);
    /// Requires at least two children.
    static Formula conjunction(std::vector<Formula> children);
    static Formula disjunction(std::vector<Formula> children);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);
    static Formula quantified(Quantifier q, std::string var, Formula body);

    Kind kind() const;
    bool is_literal() const { return kind() == Kind::Literal; }
    bool is_quantifier() const { return kind() == Kind::Exists || kind() == Kind::Forall; }

    const Literal& literal() const;
    /// Operands of And/Or; the single operand of Not, Exists and Forall.
    const std::vector<Formula>& children() const;
    const Formula& body() const;
    /// Bound variable of Exists/Forall.
    const std::string& variable() const;

    bool is_quantifier_free() const;
    /// A quantifier chain over a quantifier-free matrix.
    bool is_prenex() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Formula& f);
inline bool is_closed(const Formula& f) { return free_vars(f).empty(); }

std::string to_string(const Term& t);
std::string to_string(const Literal& lit);
/// Prints in the concrete grammar accepted by parse_formula.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Literal& lit);
std::ostream& operator<<(std::ostream& os, const Formula& f);

/// Grammar:
///   formula := quant* matrix
///   quant   := ("all" | "some") VAR
///   matrix  := conj ("|" conj)*
///   conj    := unit ("&" unit)*
///   unit    := "~" unit | "(" formula ")" | atom
///   atom    := PRED "(" term ("," term)* ")"
/// `~` directly before an atom yields a negated literal; otherwise a Not node.
/// Throws SyntaxError, or ArityError when a predicate is used with two arities.
Formula parse_formula(std::string_view text);

/// Negation normal form: Not nodes pushed onto literals.
Formula to_nnf(const Formula& f);

struct NormalFormMatrix
{
    enum class Kind { Dnf, Cnf };

    Kind kind = Kind::Dnf;
    /// Monomials (DNF) or clauses (CNF).
    std::vector<std::vector<Literal>> groups;

    Formula to_formula() const;
};

inline constexpr std::size_t default_group_cap = 1'000'000;

/// Naive distribution with per-group literal dedup and group dedup.
/// Throws NormalFormLimitError if an intermediate group count exceeds `cap`.
NormalFormMatrix to_dnf(const Formula& matrix, std::size_t cap = default_group_cap);
NormalFormMatrix to_cnf(const Formula& matrix, std::size_t cap = default_group_cap);

struct PrenexSplit
{
    std::vector<std::pair<Quantifier, std::string>> prefix; // outermost first
    Formula matrix;
};

/// Throws CompileError when `f` is not prenex.
PrenexSplit split_prenex(const Formula& f);

/// Where one argument of a rewritten atom comes from: a mode of the new
/// predicate, or a fixed constant.
using ArgSource = std::variant<std::size_t, std::string>;

struct DedupSpec
{
    std::string predicate; // fresh name
    std::string source;    // original predicate
    std::vector<ArgSource> merge_map; // one entry per original argument
    std::size_t order = 0; // arity of the fresh predicate

    friend bool operator==(const DedupSpec&, const DedupSpec&) = default;
};

struct DedupResult
{
    Formula formula;
    std::vector<DedupSpec> specs;
};

/// Replaces every atom with a repeated variable or a constant argument by a
/// fresh predicate over its distinct variables (first-occurrence order).
DedupResult rewrite_duplicate_atoms(const Formula& f);

struct ScopeSplit
{
    std::vector<Literal> inner; // literals mentioning the variable
    std::vector<Literal> outer;
};

ScopeSplit shrink_scope(Quantifier q, const std::string& var, const std::vector<Literal>& group);

} // namespace tensorlog
