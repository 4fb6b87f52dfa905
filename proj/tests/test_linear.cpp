#include "fa/linear.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace fa;
using fa::testing::E;
using fa::testing::random_element;

namespace {

std::string words_str(const std::vector<Word> &ws)
{
    std::string s;
    for (const Word &w : ws)
        s += w.str() + " ";
    return s;
}

} // namespace

TEST_SUITE_BEGIN("linear");

TEST_CASE("monomial basis in degree-lex order")
{
    std::vector<Word> b = monomial_basis(2, 2);
    CHECK(b.size() == 7);
    CHECK(words_str(b) == "1 a b aa ab ba bb ");
    CHECK(monomial_basis(3, 1).size() == 4);
    CHECK(count_words_upto(2, 13) == 16383);
    CHECK(count_words_upto(1, 5) == 6);

    SolveOptions tight;
    tight.column_cap = 6;
    CHECK_THROWS_AS(monomial_basis(2, 2, tight), ResourceError);
}

TEST_CASE("centralizer kernel of a single generator")
{
    KernelBasis kb = kernel_bounded(LinearXEquation::commutator(E("a", 2)), 3);
    REQUIRE(kb.dimension() == 4);
    CHECK(kb.basis[0].is_one());
    CHECK(kb.basis[1] == E("a", 2));
    CHECK(kb.basis[2] == E("aa", 2));
    CHECK(kb.basis[3] == E("aaa", 2));
}

TEST_CASE("worked conjugation pair has no short intertwiner and a unique one at degree 7")
{
    Element u = E("abac+abacab", 3);
    Element v = E("caba+bacaba", 3);
    LinearXEquation eq = LinearXEquation::intertwiner(u, v);

    SolveOptions opts;
    opts.column_cap = 10000;
    CHECK(kernel_bounded(eq, 6, opts).dimension() == 0);

    KernelBasis k7 = kernel_bounded(eq, 7, opts);
    REQUIRE(k7.dimension() == 1);
    CHECK(k7.basis[0] == E("abacaba", 3));
}

TEST_CASE("affine solving")
{
    int k = 3;
    // plain x = c
    LinearXEquation id{{{Element::one(k), Element::one(k)}}, E("c", 3)};
    AffineSolution s1 = solve_affine(id, 2);
    REQUIRE(s1.particular.has_value());
    CHECK(*s1.particular == E("c", 3));
    CHECK(s1.kernel.dimension() == 0);

    // a x + x a = 0 at degree 0: kernel spans {1}
    AffineSolution s2 = solve_affine(LinearXEquation::commutator(E("a", 2)), 0);
    REQUIRE(s2.particular.has_value());
    CHECK(s2.particular->is_zero());
    REQUIRE(s2.kernel.dimension() == 1);
    CHECK(s2.kernel.basis[0].is_one());

    // a x = 1 has no solution
    LinearXEquation bad{{{E("a", 2), Element::one(2)}}, Element::one(2)};
    AffineSolution s3 = solve_affine(bad, 3);
    CHECK_FALSE(s3.particular.has_value());
    CHECK(s3.kernel.dimension() == 0);
}

TEST_CASE("kernel dimension is monotone in the degree bound")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Element u = random_element(rng, 2, 3, 3, false);
        LinearXEquation eq = LinearXEquation::commutator(u);
        size_t prev = 0;
        for (int d = 0; d <= 5; ++d) {
            size_t dim = kernel_bounded(eq, d).dimension();
            CHECK(dim >= prev);
            prev = dim;
        }
    }
}

TEST_CASE("identical inputs produce identical bases")
{
    Element u = E("ab+b", 2), v = E("ba+b", 2);
    KernelBasis a = kernel_bounded(LinearXEquation::intertwiner(u, v), 6);
    KernelBasis b = kernel_bounded(LinearXEquation::intertwiner(u, v), 6);
    CHECK(a.basis == b.basis);
}

TEST_CASE("exhaustive enumeration for x a = a x at degree 1")
{
    MonomialEquation eq({Element::one(2), E("a", 2)}, {E("a", 2), Element::one(2)});
    std::vector<Element> sols = exhaustive_solutions(eq, 1);
    REQUIRE(sols.size() == 4);
    CHECK(sols[0].is_zero());
    CHECK(std::find(sols.begin(), sols.end(), E("1+a", 2)) != sols.end());
}

TEST_CASE("zero always solves when both sides carry the unknown")
{
    MonomialEquation eq({E("ab", 2), E("b", 2)}, {E("ba", 2), E("a", 2)});
    std::vector<Element> sols = exhaustive_solutions(eq, 2);
    CHECK(!sols.empty());
    CHECK(sols[0].is_zero());
}

TEST_CASE("exhaustive solutions equal the kernel span for linear equations")
{
    std::mt19937_64 rng(32);
    int checked = 0;
    while (checked < 8) {
        Element u1 = random_element(rng, 2, 2, 2, false);
        Element u2 = random_element(rng, 2, 2, 2, false);
        Element v1 = random_element(rng, 2, 2, 2, false);
        Element v2 = random_element(rng, 2, 2, 2, false);
        MonomialEquation eq({u1, u2}, {v1, v2});
        if (!eq.degree_balanced())
            continue;
        ++checked;
        std::vector<Element> sols = exhaustive_solutions(eq, 3);
        KernelBasis kb =
            kernel_bounded(LinearXEquation::two_block(u1, u2, v1, v2), 3);
        // full set equality: counts match and every solution reduces to zero
        CHECK(sols.size() == (size_t(1) << kb.dimension()));
        for (const Element &x : sols)
            CHECK(kb.contains(x));
    }
}

TEST_CASE("candidate cap refuses loudly")
{
    MonomialEquation eq({E("a", 2), E("a", 2)}, {E("b", 2), E("b", 2)});
    SolveOptions tiny;
    tiny.candidate_cap = 8;
    CHECK_THROWS_AS(exhaustive_solutions(eq, 3, tiny), ResourceError);
}

TEST_CASE("multi-block kernel finds intertwiner pairs along a solution")
{
    // s x1 + x1 t = 0 for x1 = aba: contains (ab, ba) and (1, 1)
    int k = 3;
    Element x1 = E("aba", 3);
    MultiKernelBasis mk = kernel_multi(
        {{{Element::one(k), x1}}, {{x1, Element::one(k)}}}, k, 2);
    bool has_unit = false, has_pair = false;
    for (const auto &tuple : mk.basis) {
        if (tuple[0].is_one() && tuple[1].is_one())
            has_unit = true;
        if (tuple[0] == E("ab", 3) && tuple[1] == E("ba", 3))
            has_pair = true;
        // every tuple satisfies s x1 + x1 t = 0
        CHECK((tuple[0] * x1 + x1 * tuple[1]).is_zero());
    }
    CHECK(has_unit);
    CHECK(has_pair);
}

TEST_SUITE_END();
