#pragma once

#include "fa/linear.hpp"

#include <map>

namespace fa {

/// A homogeneous monomial system: equations whose sides are sequences of
/// variables and (homogeneous) coefficients, multiplied out in order.
struct HomSystem {
    struct Sym {
        bool is_var = false;
        int id = 0;
    };
    struct Equation {
        std::vector<Sym> lhs, rhs;
    };

    int alphabet = 1;
    std::vector<std::string> var_names;
    std::vector<std::optional<int>> declared_degree; // per variable, optional
    std::vector<std::string> coef_names;
    std::vector<Element> coef_values; // each homogeneous and nonzero
    std::vector<Equation> equations;

    int var_id(const std::string &name) const;
    int coef_id(const std::string &name) const;
};

/// Text format, one directive per line ('#' starts a comment):
///   var <name> [degree]
///   coef <name> = <element>
///   eq <symbols...> = <symbols...>
HomSystem parse_homsys(const std::string &text, int alphabet = 0);

/// variable id -> substituted degree (>= 1)
using DegreeProfile = std::map<int, int>;

/// Profile from the `var` declarations; every variable must carry a degree.
DegreeProfile declared_profile(const HomSystem &sys);

/// Substitute and compare both sides of every equation exactly. Assigned
/// values must be homogeneous.
bool check_solution(const HomSystem &sys, const std::map<int, Element> &assignment);

/// Union-find closure over the letter positions of all variables under a
/// fixed degree profile: positions aligned by the equations collapse into
/// classes, each either pinned to a coefficient letter or free.
struct PositionPartition {
    struct Pos {
        int letter = -1;     ///< pinned coefficient letter, or -1
        int free_class = -1; ///< index among free classes when letter < 0
    };
    std::vector<std::vector<Pos>> var_positions; // [var][position]
    int free_class_count = 0;
    bool contradiction = false;
    std::string detail; ///< which letters collided, when they did
};

/// Requires monomial coefficients and a balanced profile.
PositionPartition align(const HomSystem &sys, const DegreeProfile &profile);

/// All monomial solutions under the profile: free classes range over the
/// alphabet independently. Deterministic order.
std::vector<std::map<int, Element>>
enumerate_monomial_solutions(const HomSystem &sys, const DegreeProfile &profile,
                             const SolveOptions &opts = {});

/// Exhaustive substitution search over all monomial assignments; the
/// desk-scale oracle for align-then-enumerate.
std::vector<std::map<int, Element>>
brute_force_monomial_solutions(const HomSystem &sys, const DegreeProfile &profile,
                               const SolveOptions &opts = {});

} // namespace fa
