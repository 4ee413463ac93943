#include "tensorlog/formula.hpp"

#include "tensorlog/error.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace tensorlog {

struct Formula::Node
{
    Kind kind;
    Literal lit;
    std::string var;
    std::vector<Formula> children;
};

Literal Literal::negate() const
{
    Literal out = *this;
    out.negated = !negated;
    return out;
}

std::size_t Literal::occurrences(const std::string& var) const
{
    return static_cast<std::size_t>(std::count_if(args.begin(), args.end(), [&](const Term& t) {
        return t.is_variable() && t.name == var;
    }));
}

Formula Formula::literal(Literal lit)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Literal, std::move(lit), {}, {}}));
}

Formula Formula::negation(Formula body)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(body)}}));
}

Formula Formula::conjunction(std::vector<Formula> children)
{
    if (children.size() < 2)
        throw Error("conjunction needs at least two operands");
    return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(children)}));
}

Formula Formula::disjunction(std::vector<Formula> children)
{
    if (children.size() < 2)
        throw Error("disjunction needs at least two operands");
    return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, std::move(children)}));
}

Formula Formula::exists(std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Exists, {}, std::move(var), {std::move(body)}}));
}

Formula Formula::forall(std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(Node{Kind::Forall, {}, std::move(var), {std::move(body)}}));
}

Formula Formula::quantified(Quantifier q, std::string var, Formula body)
{
    return q == Quantifier::Exists ? exists(std::move(var), std::move(body))
                                   : forall(std::move(var), std::move(body));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Literal& Formula::literal() const
{
    if (node_->kind != Kind::Literal)
        throw Error("formula node is not a literal");
    return node_->lit;
}

const std::vector<Formula>& Formula::children() const { return node_->children; }

const Formula& Formula::body() const
{
    if (node_->children.size() != 1)
        throw Error("formula node has no single body");
    return node_->children.front();
}

const std::string& Formula::variable() const
{
    if (!is_quantifier())
        throw Error("formula node is not a quantifier");
    return node_->var;
}

bool Formula::is_quantifier_free() const
{
    if (is_quantifier())
        return false;
    return std::all_of(children().begin(), children().end(),
                       [](const Formula& c) { return c.is_quantifier_free(); });
}

bool Formula::is_prenex() const
{
    const Formula* f = this;
    while (f->is_quantifier())
        f = &f->body();
    return f->is_quantifier_free();
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    return a.node_->kind == b.node_->kind && a.node_->lit == b.node_->lit && a.node_->var == b.node_->var
           && a.node_->children == b.node_->children;
}

std::set<std::string> free_vars(const Formula& f)
{
    std::set<std::string> out;
    switch (f.kind()) {
    case Formula::Kind::Literal:
        for (const auto& t : f.literal().args)
            if (t.is_variable())
                out.insert(t.name);
        break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        out = free_vars(f.body());
        out.erase(f.variable());
        break;
    default:
        for (const auto& c : f.children())
            out.merge(free_vars(c));
    }
    return out;
}

// ---------------------------------------------------------------- printing

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Literal& lit)
{
    std::string s = lit.negated ? "~" : "";
    s += lit.predicate;
    s += '(';
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
        if (i)
            s += ',';
        s += lit.args[i].name;
    }
    s += ')';
    return s;
}

namespace {

std::string print_formula(const Formula& f);

std::string print_unit(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::Literal:
        return to_string(f.literal());
    case Formula::Kind::Not: {
        const Formula& b = f.body();
        if (b.is_literal() && !b.literal().negated)
            return "~(" + to_string(b.literal()) + ")";
        return "~" + print_unit(b);
    }
    default:
        return "(" + print_formula(f) + ")";
    }
}

std::string print_conj(const Formula& f)
{
    if (f.kind() != Formula::Kind::And)
        return print_unit(f);
    std::string s;
    for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i)
            s += " & ";
        s += print_unit(f.children()[i]);
    }
    return s;
}

std::string print_disj(const Formula& f)
{
    if (f.is_quantifier())
        return "(" + print_formula(f) + ")";
    if (f.kind() != Formula::Kind::Or)
        return print_conj(f);
    std::string s;
    for (std::size_t i = 0; i < f.children().size(); ++i) {
        const Formula& c = f.children()[i];
        if (i)
            s += " | ";
        s += (c.kind() == Formula::Kind::Or || c.is_quantifier()) ? "(" + print_formula(c) + ")" : print_conj(c);
    }
    return s;
}

std::string print_formula(const Formula& f)
{
    std::string prefix;
    const Formula* cur = &f;
    while (cur->is_quantifier()) {
        prefix += cur->kind() == Formula::Kind::Exists ? "some " : "all ";
        prefix += cur->variable();
        prefix += ' ';
        cur = &cur->body();
    }
    if (cur->kind() == Formula::Kind::Or)
        return prefix + print_disj(*cur);
    return prefix + print_conj(*cur);
}

} // namespace

std::string to_string(const Formula& f) { return print_formula(f); }

std::ostream& operator<<(std::ostream& os, const Literal& lit) { return os << to_string(lit); }
std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---------------------------------------------------------------- normal forms

Formula to_nnf(const Formula& f)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Literal:
        return f;
    case K::And:
    case K::Or: {
        std::vector<Formula> cs;
        for (const auto& c : f.children())
            cs.push_back(to_nnf(c));
        return f.kind() == K::And ? Formula::conjunction(std::move(cs)) : Formula::disjunction(std::move(cs));
    }
    case K::Exists:
        return Formula::exists(f.variable(), to_nnf(f.body()));
    case K::Forall:
        return Formula::forall(f.variable(), to_nnf(f.body()));
    case K::Not:
        break;
    }

    const Formula& b = f.body();
    switch (b.kind()) {
    case K::Literal:
        return Formula::literal(b.literal().negate());
    case K::Not:
        return to_nnf(b.body());
    case K::And:
    case K::Or: {
        std::vector<Formula> cs;
        for (const auto& c : b.children())
            cs.push_back(to_nnf(Formula::negation(c)));
        return b.kind() == K::And ? Formula::disjunction(std::move(cs)) : Formula::conjunction(std::move(cs));
    }
    case K::Exists:
        return Formula::forall(b.variable(), to_nnf(Formula::negation(b.body())));
    case K::Forall:
        return Formula::exists(b.variable(), to_nnf(Formula::negation(b.body())));
    }
    return f;
}

namespace {

using Groups = std::vector<std::vector<Literal>>;

void dedup_literals(std::vector<Literal>& group)
{
    std::vector<Literal> out;
    for (auto& lit : group)
        if (std::find(out.begin(), out.end(), lit) == out.end())
            out.push_back(std::move(lit));
    group = std::move(out);
}

void dedup_groups(Groups& groups)
{
    Groups out;
    std::set<std::vector<Literal>> seen;
    for (auto& g : groups) {
        auto key = g;
        std::sort(key.begin(), key.end());
        if (seen.insert(std::move(key)).second)
            out.push_back(std::move(g));
    }
    groups = std::move(out);
}

/// Drops every group that strictly contains another group. Equivalent in both
/// DNF and CNF; the order of surviving groups is kept.
void drop_subsumed(Groups& groups)
{
    std::vector<std::vector<Literal>> keys;
    keys.reserve(groups.size());
    for (const auto& g : groups) {
        auto key = g;
        std::sort(key.begin(), key.end());
        keys.push_back(std::move(key));
    }
    std::vector<bool> drop(groups.size(), false);
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = 0; j < keys.size() && !drop[i]; ++j)
            if (j != i && !drop[j] && keys[j].size() < keys[i].size()
                && std::includes(keys[i].begin(), keys[i].end(), keys[j].begin(), keys[j].end()))
                drop[i] = true;
    Groups out;
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (!drop[i])
            out.push_back(std::move(groups[i]));
    groups = std::move(out);
}

/// `joined` is the connective whose operands concatenate groups; the other
/// connective distributes.
Groups distribute(const Formula& f, Formula::Kind joined, std::size_t cap)
{
    using K = Formula::Kind;
    if (f.is_literal())
        return {{f.literal()}};
    if (f.kind() != K::And && f.kind() != K::Or)
        throw Error("normal form conversion expects a quantifier-free formula in NNF");

    Groups acc;
    if (f.kind() == joined) {
        for (const auto& c : f.children()) {
            Groups g = distribute(c, joined, cap);
            acc.insert(acc.end(), std::make_move_iterator(g.begin()), std::make_move_iterator(g.end()));
            if (acc.size() > cap)
                throw NormalFormLimitError("normal form exceeds " + std::to_string(cap) + " groups");
        }
    } else {
        acc = {{}};
        for (const auto& c : f.children()) {
            Groups rhs = distribute(c, joined, cap);
            if (rhs.size() != 0 && acc.size() > cap / rhs.size())
                throw NormalFormLimitError("normal form exceeds " + std::to_string(cap) + " groups");
            Groups next;
            next.reserve(acc.size() * rhs.size());
            for (const auto& a : acc)
                for (const auto& b : rhs) {
                    auto g = a;
                    g.insert(g.end(), b.begin(), b.end());
                    dedup_literals(g);
                    next.push_back(std::move(g));
                }
            dedup_groups(next);
            drop_subsumed(next);
            acc = std::move(next);
        }
    }
    for (auto& g : acc)
        dedup_literals(g);
    dedup_groups(acc);
    drop_subsumed(acc);
    return acc;
}

NormalFormMatrix convert(const Formula& matrix, NormalFormMatrix::Kind kind, std::size_t cap)
{
    if (!matrix.is_quantifier_free())
        throw Error("normal form conversion expects a quantifier-free formula");
    Formula nnf = to_nnf(matrix);
    auto joined = kind == NormalFormMatrix::Kind::Dnf ? Formula::Kind::Or : Formula::Kind::And;
    return {kind, distribute(nnf, joined, cap)};
}

} // namespace

NormalFormMatrix to_dnf(const Formula& matrix, std::size_t cap)
{
    return convert(matrix, NormalFormMatrix::Kind::Dnf, cap);
}

NormalFormMatrix to_cnf(const Formula& matrix, std::size_t cap)
{
    return convert(matrix, NormalFormMatrix::Kind::Cnf, cap);
}

Formula NormalFormMatrix::to_formula() const
{
    if (groups.empty())
        throw Error("empty normal form has no formula representation");
    bool dnf = kind == Kind::Dnf;
    std::vector<Formula> outer;
    for (const auto& g : groups) {
        if (g.empty())
            throw Error("empty group has no formula representation");
        std::vector<Formula> lits;
        for (const auto& l : g)
            lits.push_back(Formula::literal(l));
        if (lits.size() == 1)
            outer.push_back(lits.front());
        else
            outer.push_back(dnf ? Formula::conjunction(std::move(lits)) : Formula::disjunction(std::move(lits)));
    }
    if (outer.size() == 1)
        return outer.front();
    return dnf ? Formula::disjunction(std::move(outer)) : Formula::conjunction(std::move(outer));
}

PrenexSplit split_prenex(const Formula& f)
{
    PrenexSplit out{{}, f};
    while (out.matrix.is_quantifier()) {
        auto q = out.matrix.kind() == Formula::Kind::Exists ? Quantifier::Exists : Quantifier::Forall;
        out.prefix.emplace_back(q, out.matrix.variable());
        out.matrix = out.matrix.body();
    }
    if (!out.matrix.is_quantifier_free())
        throw CompileError("formula is not in prenex form: " + to_string(f));
    return out;
}

// ---------------------------------------------------------------- repairs

namespace {

void collect_predicates(const Formula& f, std::set<std::string>& out)
{
    if (f.is_literal()) {
        out.insert(f.literal().predicate);
        return;
    }
    for (const auto& c : f.children())
        collect_predicates(c, out);
}

class AtomRewriter
{
public:
    explicit AtomRewriter(const Formula& f) { collect_predicates(f, taken_); }

    Formula rewrite(const Formula& f)
    {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::Literal:
            return Formula::literal(rewrite(f.literal()));
        case K::Not:
            return Formula::negation(rewrite(f.body()));
        case K::And:
        case K::Or: {
            std::vector<Formula> cs;
            for (const auto& c : f.children())
                cs.push_back(rewrite(c));
            return f.kind() == K::And ? Formula::conjunction(std::move(cs)) : Formula::disjunction(std::move(cs));
        }
        case K::Exists:
        case K::Forall:
            return Formula::quantified(f.kind() == K::Exists ? Quantifier::Exists : Quantifier::Forall,
                                       f.variable(), rewrite(f.body()));
        }
        return f;
    }

    std::vector<DedupSpec> specs() && { return std::move(specs_); }

private:
    Literal rewrite(const Literal& lit)
    {
        std::vector<std::string> vars;
        std::vector<ArgSource> map;
        bool needed = false;
        for (const auto& t : lit.args) {
            if (!t.is_variable()) {
                map.emplace_back(t.name);
                needed = true;
                continue;
            }
            auto it = std::find(vars.begin(), vars.end(), t.name);
            if (it != vars.end()) {
                needed = true;
                map.emplace_back(static_cast<std::size_t>(it - vars.begin()));
            } else {
                map.emplace_back(vars.size());
                vars.push_back(t.name);
            }
        }
        if (!needed)
            return lit;

        Literal out;
        out.negated = lit.negated;
        out.predicate = spec_for(lit.predicate, std::move(map), vars.size());
        for (auto& v : vars)
            out.args.push_back(Term::variable(std::move(v)));
        return out;
    }

    const std::string& spec_for(const std::string& source, std::vector<ArgSource> map, std::size_t order)
    {
        for (const auto& s : specs_)
            if (s.source == source && s.merge_map == map)
                return s.predicate;
        std::string name;
        do {
            name = source + "__dedup" + std::to_string(++counter_);
        } while (taken_.count(name));
        specs_.push_back({name, source, std::move(map), order});
        return specs_.back().predicate;
    }

    std::set<std::string> taken_;
    std::vector<DedupSpec> specs_;
    std::size_t counter_ = 0;
};

} // namespace

DedupResult rewrite_duplicate_atoms(const Formula& f)
{
    AtomRewriter rw(f);
    Formula out = rw.rewrite(f);
    return {std::move(out), std::move(rw).specs()};
}

ScopeSplit shrink_scope(Quantifier, const std::string& var, const std::vector<Literal>& group)
{
    ScopeSplit out;
    for (const auto& lit : group)
        (lit.mentions(var) ? out.inner : out.outer).push_back(lit);
    return out;
}

} // namespace tensorlog
