#include "tensorlog/random.hpp"

#include "tensorlog/error.hpp"

#include <algorithm>

namespace tensorlog {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Literal random_literal(std::mt19937_64& rng, const Signature& sig, const std::vector<std::string>& vars,
                       const RandomFormulaParams& params)
{
    const auto& [name, arity] = sig.predicates[pick(rng, 0, sig.predicates.size() - 1)];
    Literal lit;
    lit.predicate = name;
    lit.negated = coin(rng, params.negation_prob);
    for (std::size_t i = 0; i < arity; ++i) {
        if (vars.empty() || (!params.constants.empty() && coin(rng, params.constant_prob)))
            lit.args.push_back(Term::constant(params.constants[pick(rng, 0, params.constants.size() - 1)]));
        else
            lit.args.push_back(Term::variable(vars[pick(rng, 0, vars.size() - 1)]));
    }
    return lit;
}

} // namespace

Signature random_signature(std::mt19937_64& rng, const RandomFormulaParams& params)
{
    Signature sig;
    for (std::size_t i = 0; i < params.num_predicates; ++i)
        sig.predicates.emplace_back("p" + std::to_string(i), pick(rng, 1, params.max_arity));
    return sig;
}

FiniteModel random_model(std::mt19937_64& rng, std::size_t n, const Signature& sig, double density)
{
    FiniteModel m = FiniteModel::of_size(n);
    for (const auto& [name, arity] : sig.predicates) {
        m.declare(name, arity);
        for_each_index(arity, n, [&](std::span<const std::size_t> idx) {
            if (coin(rng, density))
                m.add(name, Tuple(idx.begin(), idx.end()));
        });
    }
    return m;
}

Formula random_matrix(std::mt19937_64& rng, const Signature& sig, const std::vector<std::string>& vars,
                      const RandomFormulaParams& params)
{
    if (sig.predicates.empty())
        throw Error("signature has no predicates");
    const bool top_or = coin(rng, 0.5);
    std::vector<Formula> groups;
    const std::size_t ngroups = pick(rng, 1, params.max_groups);
    for (std::size_t g = 0; g < ngroups; ++g) {
        std::vector<Formula> lits;
        const std::size_t nlits = pick(rng, 1, params.max_literals);
        for (std::size_t l = 0; l < nlits; ++l)
            lits.push_back(Formula::literal(random_literal(rng, sig, vars, params)));
        Formula group = lits.size() == 1 ? lits.front()
                        : top_or         ? Formula::conjunction(std::move(lits))
                                         : Formula::disjunction(std::move(lits));
        if (coin(rng, params.not_group_prob))
            group = Formula::negation(std::move(group));
        groups.push_back(std::move(group));
    }
    if (groups.size() == 1)
        return groups.front();
    return top_or ? Formula::disjunction(std::move(groups)) : Formula::conjunction(std::move(groups));
}

Formula random_prenex_formula(std::mt19937_64& rng, const Signature& sig, const RandomFormulaParams& params)
{
    static const std::vector<std::string> names{"X", "Y", "Z", "W"};
    const std::size_t depth = pick(rng, 0, params.max_depth);
    std::vector<std::pair<Quantifier, std::string>> prefix;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < depth; ++i) {
        std::string v;
        if (!vars.empty() && coin(rng, params.reuse_var_prob))
            v = vars[pick(rng, 0, vars.size() - 1)];
        else
            v = names[std::min(vars.size(), names.size() - 1)];
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
        prefix.emplace_back(coin(rng, 0.5) ? Quantifier::Exists : Quantifier::Forall, v);
    }
    Formula f = random_matrix(rng, sig, vars, params);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
        f = Formula::quantified(it->first, it->second, std::move(f));
    return f;
}

} // namespace tensorlog
