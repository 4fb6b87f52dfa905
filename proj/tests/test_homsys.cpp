#include "fa/homsys.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace fa;
using fa::testing::E;

namespace {

HomSystem commuting_with(const std::string &coef, int xdeg)
{
    return parse_homsys("var x " + std::to_string(xdeg) +
                            "\ncoef c = " + coef + "\neq x c = c x\n",
                        2);
}

} // namespace

TEST_SUITE_BEGIN("homsys");

TEST_CASE("check_solution substitutes and compares exactly")
{
    HomSystem sys = commuting_with("ab", 2);
    CHECK(check_solution(sys, {{0, E("ab", 2)}}));
    CHECK_FALSE(check_solution(sys, {{0, E("ba", 2)}}));

    HomSystem two = parse_homsys("var x 1\nvar y 4\neq x y = y x\n", 2);
    CHECK(check_solution(two, {{0, E("ab", 2)}, {1, E("abab", 2)}}));
    CHECK_THROWS_AS(check_solution(two, {{0, E("a+ab", 2)}, {1, E("abab", 2)}}),
                    std::invalid_argument); // non-homogeneous assignment
}

TEST_CASE("alignment pins x = aa against a single generator")
{
    HomSystem sys = commuting_with("a", 2);
    PositionPartition pp = align(sys, declared_profile(sys));
    CHECK_FALSE(pp.contradiction);
    CHECK(pp.free_class_count == 0);
    auto sols = enumerate_monomial_solutions(sys, declared_profile(sys));
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at(0) == E("aa", 2));
}

TEST_CASE("alignment leaves one free class for commuting variables")
{
    HomSystem sys = parse_homsys("var x 1\nvar y 2\neq x y = y x\n", 2);
    DegreeProfile p{{0, 1}, {1, 2}};
    PositionPartition pp = align(sys, p);
    CHECK_FALSE(pp.contradiction);
    CHECK(pp.free_class_count == 1);
    auto sols = enumerate_monomial_solutions(sys, p);
    REQUIRE(sols.size() == 2); // x = g, y = gg per letter g
    CHECK(sols[0].at(0) == E("a", 2));
    CHECK(sols[0].at(1) == E("aa", 2));
    CHECK(sols[1].at(0) == E("b", 2));
    CHECK(sols[1].at(1) == E("bb", 2));
}

TEST_CASE("pinned letters collide when the system is contradictory")
{
    HomSystem sys =
        parse_homsys("var x 1\ncoef a0 = a\ncoef b0 = b\neq x a0 = b0 x\n", 2);
    PositionPartition pp = align(sys, declared_profile(sys));
    CHECK(pp.contradiction);
}

TEST_CASE("x a = a x at degree 3 forces aaa")
{
    HomSystem sys = commuting_with("a", 3);
    auto sols = enumerate_monomial_solutions(sys, declared_profile(sys));
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at(0) == E("aaa", 2));
    CHECK(sols == brute_force_monomial_solutions(sys, declared_profile(sys)));
}

TEST_CASE("letters commute only with themselves")
{
    HomSystem sys = parse_homsys("var x 1\nvar y 1\neq x y = y x\n", 2);
    DegreeProfile p{{0, 1}, {1, 1}};
    auto sols = enumerate_monomial_solutions(sys, p);
    REQUIRE(sols.size() == 2);
    for (const auto &a : sols)
        CHECK(a.at(0) == a.at(1));
}

TEST_CASE("a free equation leaves everything free")
{
    HomSystem sys = parse_homsys("var x 3\neq x = x\n", 2);
    auto sols = enumerate_monomial_solutions(sys, declared_profile(sys));
    CHECK(sols.size() == 8);
}

TEST_CASE("unbalanced profile is refused")
{
    HomSystem sys = parse_homsys("var x 1\nvar y 2\neq x = y\n", 2);
    DegreeProfile p{{0, 1}, {1, 2}};
    CHECK_THROWS_AS(align(sys, p), std::invalid_argument);
}

TEST_CASE("alignment requires monomial coefficients")
{
    HomSystem sys = parse_homsys("var x 2\ncoef c = ab+ba\neq x c = c x\n", 2);
    CHECK(check_solution(sys, {{0, E("ab+ba", 2)}})); // general data still checkable
    CHECK_THROWS_AS(align(sys, declared_profile(sys)), std::invalid_argument);
}

TEST_CASE("align-then-enumerate equals brute force on random systems")
{
    std::mt19937_64 rng(51);
    int done = 0;
    while (done < 30) {
        int k = 2;
        int xdeg = 1 + int(rng() % 3);
        int ydeg = 1 + int(rng() % 2);
        std::string cw;
        for (int i = 0; i < 1 + int(rng() % 2); ++i)
            cw += char('a' + int(rng() % k));

        // random shapes around one or two variables and one coefficient
        std::string text = "var x " + std::to_string(xdeg) + "\nvar y " +
                           std::to_string(ydeg) + "\ncoef c = " + cw + "\n";
        switch (rng() % 4) {
        case 0:
            text += "eq x c = c x\n";
            break;
        case 1:
            text += "eq x y = y x\n";
            break;
        case 2:
            text += "eq x c y = y c x\n";
            if (xdeg != ydeg)
                continue;
            break;
        default:
            text += "eq x x = x x\n";
            break;
        }
        HomSystem sys = parse_homsys(text, k);
        DegreeProfile p = declared_profile(sys);
        double space = 1;
        for (const auto &[v, d] : p)
            for (int i = 0; i < d; ++i)
                space *= k;
        if (space > 65536)
            continue;
        ++done;
        auto fast = enumerate_monomial_solutions(sys, p);
        auto slow = brute_force_monomial_solutions(sys, p);
        CHECK(fast == slow);
        for (const auto &a : fast)
            CHECK(check_solution(sys, a));
    }
}

TEST_CASE("homogeneous lifting of free classes")
{
    std::mt19937_64 rng(52);
    HomSystem sys = parse_homsys("var x 1\nvar y 2\neq x y = y x\n", 2);
    DegreeProfile p{{0, 1}, {1, 2}};
    PositionPartition pp = align(sys, p);
    REQUIRE_FALSE(pp.contradiction);
    REQUIRE(pp.free_class_count == 1);

    for (int trial = 0; trial < 200; ++trial) {
        // substitute one random homogeneous element for the single free class
        int d = 1 + int(rng() % 3);
        std::vector<Word> ws;
        for (int i = 0; i < 1 + int(rng() % 3); ++i)
            ws.push_back(fa::testing::random_word(rng, 2, d));
        Element h(2, std::move(ws));
        if (h.is_zero())
            continue;
        std::map<int, Element> assignment;
        for (size_t v = 0; v < pp.var_positions.size(); ++v) {
            Element acc = Element::one(2);
            for (const auto &pos : pp.var_positions[v])
                acc *= pos.letter >= 0
                           ? Element::monomial(2, Word(std::string(1, char(pos.letter))))
                           : h;
            assignment.emplace(int(v), acc);
        }
        CHECK(check_solution(sys, assignment));
    }
}

TEST_SUITE_END();
