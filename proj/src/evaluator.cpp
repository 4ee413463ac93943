#include "tensorlog/evaluator.hpp"

#include "tensorlog/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace tensorlog {

int coerce_truth(double raw)
{
    if (std::abs(raw - 1.0) < truth_tolerance)
        return 1;
    if (std::abs(raw) < truth_tolerance)
        return 0;
    throw EvalError("non-Boolean truth value " + std::to_string(raw));
}

namespace {

const Tensor& lookup(const TensorEnv& env, const std::string& name)
{
    auto it = env.find(name);
    if (it == env.end())
        throw EvalError("unresolved tensor reference '" + name + "'");
    return it->second;
}

} // namespace

namespace {

// Explicit chain Q^{E,M} x_{1,j_1} R_1 ... x_{1,j_M} R_M, followed by the
// free-variable merge.
Tensor materialized_chain(const TensorDefinition& def, const std::vector<Tensor>& ops,
                          const std::function<void(const Tensor&)>& note)
{
    const std::size_t M = ops.size();
    const std::size_t N = ops.front().dim();
    std::size_t order = M, peak = M;
    for (const auto& op : ops) {
        order = order - 1 + op.order() - 1;
        peak = std::max(peak, order);
    }
    constexpr double max_entries = 1 << 26;
    if (std::pow(static_cast<double>(N), static_cast<double>(peak)) > max_entries)
        throw EvalError("definition '" + def.name + "' needs an order-" + std::to_string(peak)
                        + " intermediate when the quantifier tensor is materialized");

    Tensor acc = quantifier_tensor<double>(M, N);
    for (std::size_t m = 0; m < M; ++m) {
        acc = contract(acc, 0, ops[m], def.operands[m].mode);
        note(acc);
    }
    if (acc.order() != def.layout.size())
        throw EvalError("definition '" + def.name + "' produced order " + std::to_string(acc.order())
                        + " but its layout has " + std::to_string(def.layout.size()) + " modes");
    if (def.needs_merge())
        acc = generalized_diagonal(acc, std::span<const std::size_t>(def.layout), def.free_args.size());
    return acc;
}

// Same value without building Q: the accumulator keeps the shared
// quantified index as mode 0 and one mode per free argument seen so far.
// Each step multiplies in the next operand slice by slice; free arguments
// that repeat are merged on the spot, so the order never exceeds
// 1 + |free_args|. A final sum over mode 0 applies the quantifier.
Tensor streamed_chain(const TensorDefinition& def, const std::vector<Tensor>& ops,
                      const std::function<void(const Tensor&)>& note)
{
    const std::size_t N = ops.front().dim();
    std::size_t expected_modes = 0;
    for (const auto& op : ops)
        expected_modes += op.order() - 1;
    if (expected_modes != def.layout.size())
        throw EvalError("definition '" + def.name + "' has " + std::to_string(expected_modes)
                        + " free modes but its layout has " + std::to_string(def.layout.size()));
    for (std::size_t l : def.layout)
        if (l >= def.free_args.size())
            throw EvalError("definition '" + def.name + "' has a layout entry out of range");

    Tensor acc = Tensor::ones(1, N);
    std::size_t bound = 0; // free arguments carried by acc: labels 0..bound-1
    std::size_t pos = 0;
    for (std::size_t m = 0; m < ops.size(); ++m) {
        const Tensor op = move_mode(ops[m], def.operands[m].mode, 0);
        const std::vector<std::size_t> labels(def.layout.begin() + static_cast<std::ptrdiff_t>(pos),
                                              def.layout.begin() + static_cast<std::ptrdiff_t>(pos + op.order() - 1));
        pos += op.order() - 1;
        std::size_t next = bound;
        for (std::size_t l : labels)
            next = std::max(next, l + 1);

        Tensor out(1 + next, N);
        std::vector<std::size_t> ia(1 + bound), ib(op.order());
        std::size_t n = 0;
        for_each_index(1 + next, N, [&](std::span<const std::size_t> idx) {
            std::copy_n(idx.begin(), 1 + bound, ia.begin());
            ib[0] = idx[0];
            for (std::size_t i = 0; i < labels.size(); ++i)
                ib[i + 1] = idx[1 + labels[i]];
            out.data()[static_cast<Eigen::Index>(n++)] = acc(ia) * op(ib);
        });
        acc = std::move(out);
        bound = next;
        note(acc);
    }
    if (bound != def.free_args.size())
        throw EvalError("definition '" + def.name + "' does not bind every free argument");

    Tensor result(bound, N);
    const auto stride = static_cast<Eigen::Index>(result.size());
    for (std::size_t k = 0; k < N; ++k)
        result.data() += acc.data().segment(static_cast<Eigen::Index>(k) * stride, stride);
    return result;
}

} // namespace

Tensor evaluate_definition(const TensorDefinition& def, const TensorEnv& env, const EvalOptions& options,
                           EvalStats* stats)
{
    const std::size_t M = def.operands.size();
    if (M == 0)
        throw EvalError("definition '" + def.name + "' has no operands");

    std::vector<Tensor> ops;
    ops.reserve(M);
    for (const auto& op : def.operands) {
        const Tensor& t = lookup(env, op.tensor);
        if (t.order() != op.order || op.mode >= t.order())
            throw EvalError("operand '" + op.tensor + "' of '" + def.name + "' has order "
                            + std::to_string(t.order()) + ", expected " + std::to_string(op.order));
        if (t.dim() != lookup(env, def.operands.front().tensor).dim())
            throw EvalError("operands of '" + def.name + "' disagree on the domain size");
        ops.push_back(op.complemented ? complement(t) : t);
    }

    auto note = [&](const Tensor& t) {
        if (stats) {
            ++stats->contractions;
            stats->peak_order = std::max(stats->peak_order, t.order());
        }
    };

    Tensor acc = options.materialize_quantifiers ? materialized_chain(def, ops, note) : streamed_chain(def, ops, note);
    acc = min1(std::move(acc));
    if (def.quantifier == Quantifier::Forall)
        acc = complement(std::move(acc));
    return acc;
}

double evaluate_root(const RootExpr& root, const TensorEnv& env)
{
    auto value = [&](const RootLiteral& lit) {
        double v = lookup(env, lit.ref).value();
        return lit.negated ? 1.0 - v : v;
    };
    if (root.kind == NormalFormMatrix::Kind::Dnf) {
        double sum = 0.0;
        for (const auto& g : root.groups) {
            double prod = 1.0;
            for (const auto& lit : g)
                prod *= value(lit);
            sum += prod;
        }
        return std::min(sum, 1.0);
    }
    double prod = 1.0;
    for (const auto& g : root.groups) {
        double sum = 0.0;
        for (const auto& lit : g)
            sum += value(lit);
        prod *= std::min(sum, 1.0);
    }
    return prod;
}

EvalResult evaluate(const FiniteModel& m, const TensorProgram& p, const EvalOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    EvalResult result;
    TensorEnv env;

    std::map<std::string, const DedupSpec*> dedup;
    for (const auto& s : p.dedup)
        dedup.emplace(s.predicate, &s);
    std::set<std::string> defined;
    for (const auto& d : p.definitions)
        defined.insert(d.name);

    auto ensure_base = [&](const std::string& name) {
        if (env.count(name) || defined.count(name))
            return;
        if (auto it = dedup.find(name); it != dedup.end())
            env.emplace(name, encode_dedup_relation(m, *it->second));
        else
            env.emplace(name, encode_relation(m, name));
    };

    for (const auto& def : p.definitions) {
        for (const auto& op : def.operands)
            ensure_base(op.tensor);
        Tensor t = evaluate_definition(def, env, options, &result.stats);
        if (!is_boolean(t))
            throw EvalError("definition '" + def.name + "' is not Boolean");
        if (options.keep_intermediates)
            result.intermediates.emplace(def.name, t);
        env.insert_or_assign(def.name, std::move(t));
    }
    for (const auto& g : p.root.groups)
        for (const auto& lit : g)
            ensure_base(lit.ref);

    result.raw = evaluate_root(p.root, env);
    result.truth = coerce_truth(result.raw);
    result.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace tensorlog
