#include "tensorlog/compiler.hpp"
#include "tensorlog/error.hpp"
#include "tensorlog/evaluator.hpp"
#include "tensorlog/matkit.hpp"
#include "tensorlog/matrix_io.hpp"

#include <doctest.h>

#include <random>

using namespace tensorlog;

namespace {

AdjMatrix random_boolean(std::mt19937_64& rng, std::size_t n, double p = 0.4)
{
    std::bernoulli_distribution coin(p);
    AdjMatrix r(n, n);
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            r(i, j) = coin(rng) ? 1.0 : 0.0;
    return r;
}

AdjMatrix edges(std::size_t n, std::initializer_list<std::pair<int, int>> es)
{
    AdjMatrix r = AdjMatrix::Zero(n, n);
    for (auto [i, j] : es)
        r(i - 1, j - 1) = 1.0;
    return r;
}

FiniteModel model_of(const std::vector<std::pair<std::string, AdjMatrix>>& rels)
{
    FiniteModel m = FiniteModel::of_size(static_cast<std::size_t>(rels.front().second.rows()));
    for (const auto& [name, r] : rels) {
        m.declare(name, 2);
        for (Eigen::Index i = 0; i < r.rows(); ++i)
            for (Eigen::Index j = 0; j < r.cols(); ++j)
                if (r(i, j) != 0.0)
                    m.add(name, {static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    }
    return m;
}

} // namespace

TEST_CASE("adjacency from a model")
{
    FiniteModel m = load_model("r(a,b).\nr(b,b).\ns(a).");
    CHECK(adjacency(m, "r") == edges(2, {{1, 2}, {2, 2}}));
    CHECK_THROWS_AS(adjacency(m, "s"), ArityError);
}

TEST_CASE("composition")
{
    CHECK(compose(edges(3, {{1, 2}}), edges(3, {{2, 3}})) == edges(3, {{1, 3}}));
    std::mt19937_64 rng(51);
    AdjMatrix r = random_boolean(rng, 5);
    CHECK(compose(r, AdjMatrix::Identity(5, 5)) == r);
    CHECK_THROWS_AS(compose(r, AdjMatrix::Identity(4, 4)), Error);
}

TEST_CASE("composition agrees with the grounded oracle")
{
    std::mt19937_64 rng(52);
    const Formula f = parse_formula("some Y r1(X,Y) & r2(Y,Z)");
    for (int trial = 0; trial < 20; ++trial) {
        AdjMatrix r1 = random_boolean(rng, 4), r2 = random_boolean(rng, 4);
        FiniteModel m = model_of({{"r1", r1}, {"r2", r2}});
        AdjMatrix c = compose(r1, r2);
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t z = 0; z < 4; ++z)
                CHECK(c(x, z) == ground_eval(m, f, {{"X", x}, {"Z", z}}));
    }
}

TEST_CASE("composition agrees with the general compiler")
{
    std::mt19937_64 rng(53);
    const std::vector<Literal> group{parse_formula("r1(X,Y)").literal(), parse_formula("r2(Y,Z)").literal()};
    const TensorDefinition def = compile_exists_group("Y", group, "r_comp");
    REQUIRE(def.free_args == std::vector<std::string>{"X", "Z"});
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 5;
        AdjMatrix r1 = random_boolean(rng, n), r2 = random_boolean(rng, n);
        TensorEnv env;
        env.emplace("r1", Tensor::from_matrix(r1));
        env.emplace("r2", Tensor::from_matrix(r2));
        CHECK(evaluate_definition(def, env).to_matrix() == compose(r1, r2));
    }
}

TEST_CASE("pair overlap")
{
    AdjMatrix r = edges(3, {{1, 2}});
    CHECK(exists_pair_overlap(r, r) == 1);
    CHECK(exists_pair_overlap(edges(3, {{1, 2}}), edges(3, {{2, 1}})) == 0);

    std::mt19937_64 rng(54);
    const Formula f = parse_formula("some X some Y r1(X,Y) & r2(X,Y)");
    for (int trial = 0; trial < 50; ++trial) {
        AdjMatrix r1 = random_boolean(rng, 3, 0.2), r2 = random_boolean(rng, 3, 0.2);
        CHECK(exists_pair_overlap(r1, r2) == ground_eval(model_of({{"r1", r1}, {"r2", r2}}), f));
        CHECK(exists_pair_overlap(r1, r2) == exists_pair_overlap(r2, r1));
    }
}

TEST_CASE("subset Horn check")
{
    AdjMatrix r2 = edges(4, {{1, 2}, {2, 3}, {3, 4}});
    HornCheck ok = horn_subset(edges(4, {{1, 2}}), r2);
    CHECK(ok.truth == 1);
    CHECK(ok.violations == 0);
    HornCheck bad = horn_subset(edges(4, {{1, 2}, {4, 1}, {4, 2}, {4, 3}}), r2);
    CHECK(bad.truth == 0);
    CHECK(bad.violations == 3);

    AdjMatrix half = AdjMatrix::Constant(2, 2, 0.5);
    CHECK_THROWS_AS(horn_subset(half, half), Error);

    std::mt19937_64 rng(55);
    const Formula f = parse_formula("all X all Y ~r1(X,Y) | r2(X,Y)");
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 6;
        AdjMatrix r1 = random_boolean(rng, n, 0.3), r2 = random_boolean(rng, n, 0.7);
        std::size_t count = 0;
        bool subset = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r1(i, j) == 1.0 && r2(i, j) == 0.0) {
                    ++count;
                    subset = false;
                }
        HornCheck h = horn_subset(r1, r2);
        CHECK(h.violations == count);
        CHECK(h.truth == (subset ? 1 : 0));
        CHECK(h.truth == ground_eval(model_of({{"r1", r1}, {"r2", r2}}), f));
    }
}

TEST_CASE("transitivity Horn check")
{
    AdjMatrix r1 = edges(3, {{1, 2}}), r2 = edges(3, {{2, 3}});
    HornCheck ok = horn_transitivity(r1, r2, compose(r1, r2));
    CHECK(ok.truth == 1);
    CHECK(ok.violations == 0);
    HornCheck bad = horn_transitivity(r1, r2, AdjMatrix::Zero(3, 3));
    CHECK(bad.truth == 0);
    CHECK(bad.violations == 1);

    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 6;
        AdjMatrix a = random_boolean(rng, n, 0.3), b = random_boolean(rng, n, 0.3), c = random_boolean(rng, n, 0.6);
        std::size_t count = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z) {
                bool path = false;
                for (std::size_t y = 0; y < n; ++y)
                    path = path || (a(x, y) == 1.0 && b(y, z) == 1.0);
                if (path && c(x, z) == 0.0)
                    ++count;
            }
        HornCheck h = horn_transitivity(a, b, c);
        CHECK(h.violations == count);
        CHECK(h.truth == (count == 0 ? 1 : 0));
    }
}

TEST_CASE("dense CSV matrices")
{
    AdjMatrix r = read_csv_matrix("0,1,0\n0, 0 ,1\n1,0,0\n");
    CHECK(r == edges(3, {{1, 2}, {2, 3}, {3, 1}}));
    CHECK(read_csv_matrix(write_csv_matrix(r)) == r);
    CHECK_THROWS_AS(read_csv_matrix("0,1\n1\n"), Error);
    CHECK_THROWS_AS(read_csv_matrix("0,1,0\n1,0,0\n"), Error);
    CHECK_THROWS_AS(read_csv_matrix("0,x\n1,0\n"), Error);
}

TEST_CASE("edge lists")
{
    AdjMatrix r = read_edge_list("# comment\n1 2\n2 3\n\n");
    CHECK(r == edges(3, {{1, 2}, {2, 3}}));
    CHECK(read_edge_list("1 2\n", 4) == edges(4, {{1, 2}}));
    CHECK(read_edge_list(write_edge_list(r), 3) == r);
    CHECK_THROWS_AS(read_edge_list("0 1\n"), Error);
    CHECK_THROWS_AS(read_edge_list("1 5\n", 3), Error);
    CHECK_THROWS_AS(read_edge_list("1\n"), Error);
}
