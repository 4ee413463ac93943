#include "tensorlog/compiler.hpp"

#include "tensorlog/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tensorlog {

bool TensorDefinition::needs_merge() const
{
    if (layout.size() != free_args.size())
        return true;
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (layout[i] != i)
            return true;
    return false;
}

std::string to_string(const RootExpr& root)
{
    const bool dnf = root.kind == NormalFormMatrix::Kind::Dnf;
    auto lit = [](const RootLiteral& l) { return l.negated ? "(1 - " + l.ref + ")" : l.ref; };
    std::string s;
    for (std::size_t g = 0; g < root.groups.size(); ++g) {
        const auto& group = root.groups[g];
        std::string inner;
        for (std::size_t i = 0; i < group.size(); ++i)
            inner += (i ? (dnf ? " * " : " + ") : "") + lit(group[i]);
        if (!dnf && group.size() > 1)
            inner = "min1(" + inner + ")";
        s += (g ? (dnf ? " + " : " * ") : "") + inner;
    }
    if (root.groups.empty())
        return dnf ? "0" : "1";
    if (dnf && root.groups.size() > 1)
        s = "min1(" + s + ")";
    return s;
}

FreeArgLayout free_arg_layout(const std::vector<Literal>& inner, const std::string& var)
{
    FreeArgLayout out;
    for (const auto& lit : inner) {
        for (const auto& t : lit.args) {
            if (t.is_variable() && t.name == var)
                continue;
            if (!t.is_variable())
                throw CompileError("constant argument in " + to_string(lit) + " survived atom rewriting");
            auto it = std::find(out.args.begin(), out.args.end(), t.name);
            if (it == out.args.end()) {
                out.layout.push_back(out.args.size());
                out.args.push_back(t.name);
            } else {
                out.layout.push_back(static_cast<std::size_t>(it - out.args.begin()));
            }
        }
    }
    return out;
}

namespace {

TensorDefinition compile_group(Quantifier q, const std::string& var, const std::vector<Literal>& inner,
                               std::string name)
{
    if (inner.empty())
        throw CompileError("quantifier group over '" + var + "' has no literals");
    TensorDefinition d;
    d.name = std::move(name);
    d.quantifier = q;
    d.variable = var;
    for (const auto& lit : inner) {
        if (lit.occurrences(var) != 1)
            throw CompileError("variable condition violated: '" + var + "' must occur once in " + to_string(lit));
        Operand op;
        op.tensor = lit.predicate;
        op.order = lit.arity();
        for (std::size_t j = 0; j < lit.args.size(); ++j)
            if (lit.args[j].is_variable() && lit.args[j].name == var)
                op.mode = j;
        // Universal groups contract the tensors of the negated literals.
        op.complemented = q == Quantifier::Exists ? lit.negated : !lit.negated;
        d.operands.push_back(std::move(op));
    }
    auto layout = free_arg_layout(inner, var);
    d.free_args = std::move(layout.args);
    d.layout = std::move(layout.layout);
    return d;
}

void collect_predicates(const Formula& f, std::set<std::string>& out)
{
    if (f.is_literal()) {
        out.insert(f.literal().predicate);
        return;
    }
    for (const auto& c : f.children())
        collect_predicates(c, out);
}

void check_literals(const FiniteModel& m, const Formula& f, const std::map<std::string, const DedupSpec*>& dedup)
{
    if (!f.is_literal()) {
        for (const auto& c : f.children())
            check_literals(m, c, dedup);
        return;
    }
    const Literal& lit = f.literal();
    if (auto it = dedup.find(lit.predicate); it != dedup.end()) {
        const DedupSpec& spec = *it->second;
        const Relation& rel = m.relation(spec.source);
        if (rel.arity != spec.merge_map.size())
            throw ArityError("predicate '" + spec.source + "' has arity " + std::to_string(rel.arity)
                             + " in the model but " + std::to_string(spec.merge_map.size()) + " in the formula");
        for (const auto& src : spec.merge_map)
            if (const auto* c = std::get_if<std::string>(&src))
                m.require_index(*c);
        return;
    }
    const Relation& rel = m.relation(lit.predicate);
    if (rel.arity != lit.arity())
        throw ArityError("predicate '" + lit.predicate + "' has arity " + std::to_string(rel.arity)
                         + " in the model but " + std::to_string(lit.arity()) + " in the formula");
}

class Compiler
{
public:
    Compiler(const FiniteModel& m, const CompileOptions& opts) : model_(m), opts_(opts) {}

    TensorProgram run(const Formula& f)
    {
        if (!f.is_prenex())
            throw CompileError("formula is not in prenex form: " + to_string(f));
        if (auto fv = free_vars(f); !fv.empty())
            throw CompileError("formula is not closed; free variable '" + *fv.begin() + "'");

        // Step 0: atoms with repeated variables or constants get fresh predicates.
        DedupResult rewritten = rewrite_duplicate_atoms(f);
        program_.dedup = std::move(rewritten.specs);
        std::map<std::string, const DedupSpec*> dedup;
        for (const auto& s : program_.dedup)
            dedup.emplace(s.predicate, &s);
        check_literals(model_, rewritten.formula, dedup);

        collect_predicates(rewritten.formula, taken_);
        for (const auto& [name, rel] : model_.relations())
            taken_.insert(name);

        PrenexSplit split = split_prenex(rewritten.formula);
        Formula current = split.matrix;
        NormalFormMatrix nf;
        bool converted = false;

        // Step 2: innermost quantifier outward.
        for (auto it = split.prefix.rbegin(); it != split.prefix.rend(); ++it) {
            const auto& [q, var] = *it;
            nf = q == Quantifier::Exists ? to_dnf(current, opts_.group_cap) : to_cnf(current, opts_.group_cap);
            nf = eliminate(q, var, std::move(nf));
            current = nf.to_formula();
            converted = true;
        }
        if (!converted)
            nf = to_dnf(current, opts_.group_cap);

        // Step 3: the residue is a combination of nullary atoms.
        program_.root.kind = nf.kind;
        for (const auto& g : nf.groups) {
            std::vector<RootLiteral> group;
            for (const auto& lit : g) {
                if (lit.arity() != 0)
                    throw CompileError("residual literal " + to_string(lit) + " still has arguments");
                group.push_back({lit.predicate, lit.negated});
            }
            program_.root.groups.push_back(std::move(group));
        }
        return std::move(program_);
    }

private:
    NormalFormMatrix eliminate(Quantifier q, const std::string& var, NormalFormMatrix nf)
    {
        for (auto& group : nf.groups) {
            ScopeSplit split = shrink_scope(q, var, group);
            if (split.inner.empty())
                continue; // vacuous quantifier over this group

            const std::string& name = define(q, var, split.inner);
            const TensorDefinition& def = *std::find_if(program_.definitions.begin(), program_.definitions.end(),
                                                        [&](const TensorDefinition& d) { return d.name == name; });
            Literal atom;
            atom.predicate = name;
            for (const auto& a : def.free_args)
                atom.args.push_back(Term::variable(a));

            std::vector<Literal> replaced{std::move(atom)};
            for (auto& lit : split.outer)
                if (std::find(replaced.begin(), replaced.end(), lit) == replaced.end())
                    replaced.push_back(std::move(lit));
            group = std::move(replaced);
        }
        // Identical groups can appear once two groups collapse onto the same atom.
        std::vector<std::vector<Literal>> unique;
        std::set<std::vector<Literal>> seen;
        for (auto& g : nf.groups) {
            auto key = g;
            std::sort(key.begin(), key.end());
            if (seen.insert(std::move(key)).second)
                unique.push_back(std::move(g));
        }
        nf.groups = std::move(unique);
        return nf;
    }

    std::string memo_key(Quantifier q, const std::string& var, const std::vector<Literal>& inner) const
    {
        std::string key = q == Quantifier::Exists ? "E " : "A ";
        key += var;
        for (const auto& lit : inner)
            key += " " + to_string(lit);
        return key;
    }

    const std::string& define(Quantifier q, const std::string& var, const std::vector<Literal>& inner)
    {
        std::string key = memo_key(q, var, inner);
        if (opts_.memoize)
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;

        std::string name;
        do {
            name = "r_new_" + std::to_string(++counter_);
        } while (taken_.count(name));
        taken_.insert(name);

        program_.definitions.push_back(q == Quantifier::Exists ? compile_exists_group(var, inner, name)
                                                               : compile_forall_group(var, inner, name));
        auto [it, inserted] = memo_.insert_or_assign(std::move(key), std::move(name));
        return it->second;
    }

    const FiniteModel& model_;
    CompileOptions opts_;
    TensorProgram program_;
    std::set<std::string> taken_;
    std::map<std::string, std::string> memo_;
    std::size_t counter_ = 0;
};

} // namespace

TensorDefinition compile_exists_group(const std::string& var, const std::vector<Literal>& inner, std::string name)
{
    return compile_group(Quantifier::Exists, var, inner, std::move(name));
}

TensorDefinition compile_forall_group(const std::string& var, const std::vector<Literal>& inner, std::string name)
{
    return compile_group(Quantifier::Forall, var, inner, std::move(name));
}

TensorProgram compile(const FiniteModel& m, const Formula& f, const CompileOptions& options)
{
    return Compiler(m, options).run(f);
}

} // namespace tensorlog
