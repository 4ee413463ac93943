#pragma once

#include "tensorlog/formula.hpp"
#include "tensorlog/tensor.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tensorlog {

using Tuple = std::vector<std::size_t>;

struct Relation
{
    std::size_t arity = 0;
    std::set<Tuple> tuples; // 0-based entity indices
};

/// Domain of N named constants plus relations over it. Constants are kept
/// in lexicographic order; constant i is entity e_{i+1}.
class FiniteModel
{
public:
    explicit FiniteModel(std::vector<std::string> constants);

    /// Constants e1..eN, zero-padded so lexicographic order matches numbering.
    static FiniteModel of_size(std::size_t n);

    std::size_t size() const { return constants_.size(); }
    const std::vector<std::string>& constants() const { return constants_; }
    std::optional<std::size_t> index_of(std::string_view constant) const;
    std::size_t require_index(std::string_view constant) const;

    /// Declares a (possibly empty) relation. Redeclaring with the same arity
    /// is a no-op; a different arity throws ArityError.
    void declare(const std::string& predicate, std::size_t arity);
    void add(const std::string& predicate, Tuple tuple);

    bool has(std::string_view predicate) const;
    const Relation& relation(std::string_view predicate) const;
    const std::map<std::string, Relation, std::less<>>& relations() const { return relations_; }
    bool holds(std::string_view predicate, const Tuple& tuple) const;

private:
    std::vector<std::string> constants_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::map<std::string, Relation, std::less<>> relations_;
};

/// Fact-file format: `pred(c1,...,ck).` adds a tuple, `#const name.`
/// declares a constant, `#pred name/k.` declares a possibly empty relation,
/// `%` starts a comment. Throws SyntaxError or ArityError.
FiniteModel load_model(std::string_view text);
FiniteModel load_model_file(const std::string& path);
std::string save_model(const FiniteModel& m);

/// R[i1..ik] = 1 iff the tuple is in the relation.
Tensor encode_relation(const FiniteModel& m, std::string_view predicate);
/// All-ones minus encode_relation.
Tensor encode_negated_relation(const FiniteModel& m, std::string_view predicate);
/// Tensor of a predicate introduced by rewrite_duplicate_atoms: constant
/// arguments are fixed by one-hot contraction, repeated variables become a
/// generalized diagonal.
Tensor encode_dedup_relation(const FiniteModel& m, const DedupSpec& spec);

using Assignment = std::map<std::string, std::size_t, std::less<>>;

/// Grounded Tarskian evaluation with exact integer truth values.
/// Throws ModelError on unknown predicates/constants or unassigned variables.
int ground_eval(const FiniteModel& m, const Formula& f, const Assignment& a = {});

} // namespace tensorlog
