#include "tensorlog/error.hpp"
#include "tensorlog/model.hpp"
#include "tensorlog/random.hpp"

#include <doctest.h>

using namespace tensorlog;

TEST_CASE("load facts")
{
    FiniteModel m = load_model("r1(a,b).");
    CHECK(m.size() == 2);
    CHECK(m.constants() == std::vector<std::string>{"a", "b"});
    CHECK(m.relation("r1").tuples == std::set<Tuple>{{0, 1}});
}

TEST_CASE("declared but unused constants join the domain")
{
    FiniteModel m = load_model("#const c.\nr(a,a).");
    CHECK(m.constants() == std::vector<std::string>{"a", "c"});
    CHECK(m.relation("r").tuples == std::set<Tuple>{{0, 0}});
}

TEST_CASE("fact file errors")
{
    CHECK_THROWS_AS(load_model("r(a,b).\nr(a)."), ArityError);
    CHECK_THROWS_AS(load_model("r(a,b)"), SyntaxError);
    CHECK_THROWS_AS(load_model("r(A)."), SyntaxError);
    CHECK_THROWS_AS(load_model("% nothing\n"), ModelError);
    try {
        load_model("p(a).\n  q(a b).");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("comments, whitespace and empty relation declarations")
{
    FiniteModel m = load_model("% header\n  edge( n1 , n2 ) .  % trailing\n#pred empty/2.\n#const n3.");
    CHECK(m.size() == 3);
    CHECK(m.relation("edge").tuples.size() == 1);
    CHECK(m.relation("empty").arity == 2);
    CHECK(m.relation("empty").tuples.empty());
}

TEST_CASE("save and reload round-trips")
{
    FiniteModel m = load_model("#const z.\nr(a,b).\nr(b,b).\ns(a).\n#pred t/3.");
    FiniteModel again = load_model(save_model(m));
    CHECK(again.constants() == m.constants());
    REQUIRE(again.relations().size() == m.relations().size());
    for (const auto& [name, rel] : m.relations()) {
        CHECK(again.relation(name).arity == rel.arity);
        CHECK(again.relation(name).tuples == rel.tuples);
    }
}

TEST_CASE("of_size numbers constants so lexicographic order matches")
{
    FiniteModel m = FiniteModel::of_size(12);
    CHECK(m.constants().front() == "e01");
    CHECK(m.constants()[9] == "e10");
    CHECK(FiniteModel::of_size(3).constants() == std::vector<std::string>{"e1", "e2", "e3"});
}

TEST_CASE("relation encodings")
{
    FiniteModel m = load_model("r(a,b).\n#pred e/1.\n#const c.\nfull(a,a).\nfull(a,b).\nfull(b,a).\nfull(b,b).");
    CHECK(encode_relation(m, "r") == Tensor::from_values(2, 3, {0, 1, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(encode_relation(m, "e") == Tensor::zeros(1, 3));

    FiniteModel two = load_model("r(a,b).\nfull(a,a).\nfull(a,b).\nfull(b,a).\nfull(b,b).\n#pred e/2.");
    CHECK(encode_relation(two, "r") == Tensor::from_values(2, 2, {0, 1, 0, 0}));
    CHECK(encode_relation(two, "full") == Tensor::ones(2, 2));
    CHECK(encode_negated_relation(two, "r") == Tensor::from_values(2, 2, {1, 0, 1, 1}));
    CHECK(encode_negated_relation(two, "e") == Tensor::ones(2, 2));
    CHECK(encode_negated_relation(two, "full") == Tensor::zeros(2, 2));
    CHECK_THROWS_AS(encode_relation(two, "missing"), ModelError);
}

TEST_CASE("one-hot contraction of an encoded relation gives membership")
{
    FiniteModel m = load_model("r(a,b,c).\nr(c,c,a).");
    Tensor R = encode_relation(m, "r");
    for_each_index(3, 3, [&](std::span<const std::size_t> idx) {
        Tensor t = R;
        for (std::size_t k = 0; k < 3; ++k)
            t = contract(t, 0, Tensor::one_hot(3, idx[k]), 0);
        CHECK(t.value() == (m.holds("r", Tuple(idx.begin(), idx.end())) ? 1.0 : 0.0));
    });
}

TEST_CASE("dedup encodings")
{
    FiniteModel id = load_model("r(a,a).\nr(b,b).");
    DedupSpec diag{"r__dedup1", "r", {std::size_t{0}, std::size_t{0}}, 1};
    CHECK(encode_dedup_relation(id, diag) == Tensor::from_values(1, 2, {1, 1}));

    FiniteModel off = load_model("r(a,b).");
    CHECK(encode_dedup_relation(off, diag) == Tensor::from_values(1, 2, {0, 0}));

    FiniteModel tri = load_model("p(a,a,a).\np(a,b,a).\np(b,a,a).\np(b,b,b).\np(a,b,b).");
    DedupSpec spec{"p__dedup1", "p", {std::size_t{0}, std::size_t{1}, std::size_t{0}}, 2};
    Tensor R = encode_relation(tri, "p");
    Tensor S = encode_dedup_relation(tri, spec);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(S.at({i, j}) == R.at({i, j, i}));
    // S[i,j] = R[i,j,i]: (a,a,a) (a,b,a) present; (b,a,b) absent; (b,b,b) present.
    CHECK(S == Tensor::from_values(2, 2, {1, 1, 0, 1}));

    DedupSpec slice{"p__dedup2", "p", {std::string("b"), std::size_t{0}, std::size_t{0}}, 1};
    // S[i] = R[b,i,i]: (b,a,a) present, (b,b,b) present.
    CHECK(encode_dedup_relation(tri, slice) == Tensor::from_values(1, 2, {1, 1}));
    DedupSpec ground{"p__dedup3", "p", {std::string("a"), std::string("b"), std::string("b")}, 0};
    CHECK(encode_dedup_relation(tri, ground).value() == 1.0);
}

TEST_CASE("ground evaluation examples")
{
    FiniteModel m = load_model("r1(e1,e2).");
    CHECK(ground_eval(m, parse_formula("r1(e1,e2)")) == 1);
    CHECK(ground_eval(m, parse_formula("r1(e2,e1)")) == 0);
    CHECK(ground_eval(m, parse_formula("some Y r1(e1,Y)")) == 1);
    CHECK(ground_eval(m, parse_formula("all X some Y r1(X,Y)")) == 0);
    CHECK(ground_eval(m, parse_formula("some X all Y ~r1(Y,X)")) == 1);
    CHECK(ground_eval(m, parse_formula("r1(X,e2)"), {{"X", 0}}) == 1);
}

TEST_CASE("ground evaluation errors")
{
    FiniteModel m = load_model("r1(e1,e2).");
    CHECK_THROWS_AS(ground_eval(m, parse_formula("q(e1)")), ModelError);
    CHECK_THROWS_AS(ground_eval(m, parse_formula("r1(e1,e9)")), ModelError);
    CHECK_THROWS_AS(ground_eval(m, parse_formula("r1(X,e2)")), ModelError);
    CHECK_THROWS_AS(ground_eval(m, parse_formula("some X r1(X)")), ArityError);
}

TEST_CASE("property: relation and its negation sum to all ones")
{
    std::mt19937_64 rng(21);
    RandomFormulaParams params;
    for (int trial = 0; trial < 30; ++trial) {
        Signature sig = random_signature(rng, params);
        FiniteModel m = random_model(rng, 1 + trial % 4, sig, 0.4);
        for (const auto& [name, rel] : m.relations()) {
            Tensor sum = encode_relation(m, name);
            sum.data() += encode_negated_relation(m, name).data();
            CHECK(sum == Tensor::ones(rel.arity, m.size()));
        }
    }
}

TEST_CASE("property: ground atoms agree with tuple membership")
{
    std::mt19937_64 rng(22);
    RandomFormulaParams params;
    for (int trial = 0; trial < 20; ++trial) {
        Signature sig = random_signature(rng, params);
        FiniteModel m = random_model(rng, 1 + trial % 3, sig, 0.5);
        for (const auto& [name, rel] : m.relations())
            for_each_index(rel.arity, m.size(), [&](std::span<const std::size_t> idx) {
                Literal lit{name, {}, false};
                for (std::size_t i : idx)
                    lit.args.push_back(Term::constant(m.constants()[i]));
                const int expected = rel.tuples.count(Tuple(idx.begin(), idx.end())) ? 1 : 0;
                CHECK(ground_eval(m, Formula::literal(lit)) == expected);
            });
    }
}

namespace {

Formula rename_bound(const Formula& f, const std::string& from, const std::string& to)
{
    switch (f.kind()) {
    case Formula::Kind::Literal: {
        Literal lit = f.literal();
        for (auto& t : lit.args)
            if (t.is_variable() && t.name == from)
                t.name = to;
        return Formula::literal(lit);
    }
    case Formula::Kind::Not:
        return Formula::negation(rename_bound(f.body(), from, to));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children())
            kids.push_back(rename_bound(c, from, to));
        return f.kind() == Formula::Kind::And ? Formula::conjunction(kids) : Formula::disjunction(kids);
    }
    default: {
        if (f.variable() == from)
            return f; // rebinding: inner occurrences belong to the inner quantifier
        const Quantifier q = f.kind() == Formula::Kind::Exists ? Quantifier::Exists : Quantifier::Forall;
        return Formula::quantified(q, f.variable(), rename_bound(f.body(), from, to));
    }
    }
}

} // namespace

TEST_CASE("property: universal equals negated existential of the negation")
{
    std::mt19937_64 rng(23);
    RandomFormulaParams params;
    for (int trial = 0; trial < 200; ++trial) {
        Signature sig = random_signature(rng, params);
        FiniteModel m = random_model(rng, 2 + trial % 3, sig, 0.5);
        Formula body = random_matrix(rng, sig, {"X"}, params);
        const int forall = ground_eval(m, Formula::forall("X", body));
        const int dual = ground_eval(m, Formula::negation(Formula::exists("X", Formula::negation(body))));
        CHECK(forall == dual);
    }
}

TEST_CASE("property: renaming a bound variable preserves truth")
{
    std::mt19937_64 rng(24);
    RandomFormulaParams params;
    params.reuse_var_prob = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Signature sig = random_signature(rng, params);
        FiniteModel m = random_model(rng, 2 + trial % 3, sig, 0.5);
        Formula f = random_prenex_formula(rng, sig, params);
        if (!f.is_quantifier())
            continue;
        Formula renamed = Formula::quantified(f.kind() == Formula::Kind::Exists ? Quantifier::Exists : Quantifier::Forall,
                                              "Fresh", rename_bound(f.body(), f.variable(), "Fresh"));
        CHECK(ground_eval(m, renamed) == ground_eval(m, f));
    }
}
