#include "fa/homsys.hpp"

#include "fa/parse.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fa {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(size_t(n))
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a)
    {
        while (parent[size_t(a)] != a) {
            parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
            a = parent[size_t(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[size_t(find(a))] = find(b); }
};

int symbol_length(const HomSystem &sys, const HomSystem::Sym &s,
                  const DegreeProfile &profile)
{
    if (s.is_var) {
        auto it = profile.find(s.id);
        if (it == profile.end())
            throw std::invalid_argument("profile misses variable " +
                                        sys.var_names[size_t(s.id)]);
        if (it->second < 1)
            throw std::invalid_argument("profile degree must be >= 1");
        return it->second;
    }
    return *sys.coef_values[size_t(s.id)].degree();
}

} // namespace

int HomSystem::var_id(const std::string &name) const
{
    for (size_t i = 0; i < var_names.size(); ++i)
        if (var_names[i] == name)
            return int(i);
    return -1;
}

int HomSystem::coef_id(const std::string &name) const
{
    for (size_t i = 0; i < coef_names.size(); ++i)
        if (coef_names[i] == name)
            return int(i);
    return -1;
}

HomSystem parse_homsys(const std::string &text, int alphabet)
{
    HomSystem sys;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    struct PendingEq {
        std::vector<std::string> lhs, rhs;
        int lineno;
    };
    std::vector<PendingEq> pending;
    std::vector<std::pair<std::string, std::string>> coef_texts;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw))
            continue;
        if (kw == "var") {
            std::string name;
            if (!(ls >> name))
                throw ParseError(lineno, 1, "var needs a name");
            int deg;
            sys.var_names.push_back(name);
            sys.declared_degree.push_back(ls >> deg ? std::optional<int>(deg)
                                                    : std::nullopt);
        } else if (kw == "coef") {
            std::string name, eq;
            if (!(ls >> name >> eq) || eq != "=")
                throw ParseError(lineno, 1, "coef needs: coef <name> = <element>");
            std::string rest;
            std::getline(ls, rest);
            coef_texts.emplace_back(name, rest);
        } else if (kw == "eq") {
            PendingEq pe;
            pe.lineno = lineno;
            std::string tok;
            bool right = false;
            while (ls >> tok) {
                if (tok == "=") {
                    right = true;
                    continue;
                }
                (right ? pe.rhs : pe.lhs).push_back(tok);
            }
            if (!right || pe.lhs.empty() || pe.rhs.empty())
                throw ParseError(lineno, 1, "eq needs: eq <syms> = <syms>");
            pending.push_back(std::move(pe));
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + kw + "'");
        }
    }

    int k = alphabet;
    std::vector<Element> parsed;
    for (const auto &[name, txt] : coef_texts) {
        Element e = parse_element(txt, alphabet);
        if (k <= 0 || e.alphabet() > k)
            k = std::max(k, e.alphabet());
        parsed.push_back(std::move(e));
    }
    if (k <= 0)
        k = 1;
    sys.alphabet = k;
    for (size_t i = 0; i < coef_texts.size(); ++i) {
        Element e = parse_element(coef_texts[i].second, k);
        if (e.is_zero())
            throw std::invalid_argument("coefficient " + coef_texts[i].first +
                                        " is zero");
        if (!e.is_homogeneous())
            throw std::invalid_argument("coefficient " + coef_texts[i].first +
                                        " is not homogeneous");
        sys.coef_names.push_back(coef_texts[i].first);
        sys.coef_values.push_back(std::move(e));
    }

    for (const PendingEq &pe : pending) {
        HomSystem::Equation eq;
        auto to_syms = [&](const std::vector<std::string> &names,
                           std::vector<HomSystem::Sym> &out) {
            for (const std::string &nm : names) {
                if (int v = sys.var_id(nm); v >= 0)
                    out.push_back({true, v});
                else if (int c = sys.coef_id(nm); c >= 0)
                    out.push_back({false, c});
                else
                    throw ParseError(pe.lineno, 1, "unknown symbol '" + nm + "'");
            }
        };
        to_syms(pe.lhs, eq.lhs);
        to_syms(pe.rhs, eq.rhs);
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

DegreeProfile declared_profile(const HomSystem &sys)
{
    DegreeProfile p;
    for (size_t i = 0; i < sys.var_names.size(); ++i) {
        if (!sys.declared_degree[i])
            throw std::invalid_argument("variable " + sys.var_names[i] +
                                        " has no declared degree");
        p[int(i)] = *sys.declared_degree[i];
    }
    return p;
}

bool check_solution(const HomSystem &sys, const std::map<int, Element> &assignment)
{
    for (const auto &[id, e] : assignment) {
        if (!e.is_homogeneous() || e.is_zero())
            throw std::invalid_argument("assignment for " +
                                        sys.var_names[size_t(id)] +
                                        " must be homogeneous and nonzero");
    }
    auto side = [&](const std::vector<HomSystem::Sym> &syms) {
        Element acc = Element::one(sys.alphabet);
        for (const HomSystem::Sym &s : syms) {
            if (s.is_var) {
                auto it = assignment.find(s.id);
                if (it == assignment.end())
                    throw std::invalid_argument("unassigned variable " +
                                                sys.var_names[size_t(s.id)]);
                acc *= it->second;
            } else {
                acc *= sys.coef_values[size_t(s.id)];
            }
        }
        return acc;
    };
    for (const HomSystem::Equation &eq : sys.equations)
        if (!(side(eq.lhs) == side(eq.rhs)))
            return false;
    return true;
}

PositionPartition align(const HomSystem &sys, const DegreeProfile &profile)
{
    for (const Element &c : sys.coef_values)
        if (c.term_count() != 1)
            throw std::invalid_argument(
                "align requires monomial coefficients (general homogeneous "
                "coefficients are supported by check_solution only)");

    // node space: one node per (variable, position); bands between repeated
    // appearances of a variable are implicit in the sharing
    std::vector<int> var_base;
    int total = 0;
    for (size_t v = 0; v < sys.var_names.size(); ++v) {
        var_base.push_back(total);
        auto it = profile.find(int(v));
        total += it == profile.end() ? 0 : it->second;
    }
    UnionFind uf(total);
    std::vector<int> pinned(size_t(total), -1);
    PositionPartition out;

    // a side under the profile is a sequence of slots, each a variable
    // position node or a pinned coefficient letter
    struct Slot {
        int node = -1;   // variable position node, or
        int letter = -1; // pinned letter
    };
    auto slots_of = [&](const std::vector<HomSystem::Sym> &syms) {
        std::vector<Slot> slots;
        for (const HomSystem::Sym &s : syms) {
            int len = symbol_length(sys, s, profile);
            for (int j = 0; j < len; ++j) {
                Slot sl;
                if (s.is_var)
                    sl.node = var_base[size_t(s.id)] + j;
                else
                    sl.letter = sys.coef_values[size_t(s.id)].terms()[0].letter(j);
                slots.push_back(sl);
            }
        }
        return slots;
    };

    auto pin = [&](int node, int letter) {
        int r = uf.find(node);
        if (pinned[size_t(r)] >= 0 && pinned[size_t(r)] != letter) {
            out.contradiction = true;
            if (out.detail.empty())
                out.detail = "position class pinned to both '" +
                             std::string(1, char('a' + pinned[size_t(r)])) +
                             "' and '" + std::string(1, char('a' + letter)) + "'";
            return;
        }
        pinned[size_t(r)] = letter;
    };

    for (const HomSystem::Equation &eq : sys.equations) {
        std::vector<Slot> L = slots_of(eq.lhs), R = slots_of(eq.rhs);
        if (L.size() != R.size())
            throw std::invalid_argument("profile does not balance an equation");
        for (size_t p = 0; p < L.size(); ++p) {
            const Slot &a = L[p], &b = R[p];
            if (a.node >= 0 && b.node >= 0) {
                int ra = uf.find(a.node), rb = uf.find(b.node);
                if (ra == rb)
                    continue;
                int la = pinned[size_t(ra)], lb = pinned[size_t(rb)];
                if (la >= 0 && lb >= 0 && la != lb) {
                    out.contradiction = true;
                    if (out.detail.empty())
                        out.detail = "merge pins '" +
                                     std::string(1, char('a' + la)) + "' with '" +
                                     std::string(1, char('a' + lb)) + "'";
                }
                uf.unite(ra, rb);
                pinned[size_t(uf.find(ra))] = std::max(la, lb);
            } else if (a.node >= 0) {
                pin(a.node, b.letter);
            } else if (b.node >= 0) {
                pin(b.node, a.letter);
            } else if (a.letter != b.letter) {
                out.contradiction = true;
                if (out.detail.empty())
                    out.detail = "coefficient letters '" +
                                 std::string(1, char('a' + a.letter)) +
                                 "' and '" + std::string(1, char('a' + b.letter)) +
                                 "' aligned";
            }
        }
    }

    // number the free classes in node order
    std::map<int, int> free_index;
    out.var_positions.resize(sys.var_names.size());
    for (size_t v = 0; v < sys.var_names.size(); ++v) {
        auto it = profile.find(int(v));
        int len = it == profile.end() ? 0 : it->second;
        for (int j = 0; j < len; ++j) {
            int r = uf.find(var_base[v] + j);
            PositionPartition::Pos pos;
            if (pinned[size_t(r)] >= 0) {
                pos.letter = pinned[size_t(r)];
            } else {
                auto [fit, inserted] = free_index.emplace(r, int(free_index.size()));
                pos.free_class = fit->second;
            }
            out.var_positions[v].push_back(pos);
        }
    }
    out.free_class_count = int(free_index.size());
    return out;
}

std::vector<std::map<int, Element>>
enumerate_monomial_solutions(const HomSystem &sys, const DegreeProfile &profile,
                             const SolveOptions &opts)
{
    PositionPartition pp = align(sys, profile);
    std::vector<std::map<int, Element>> out;
    if (pp.contradiction)
        return out;

    int k = sys.alphabet;
    double space = 1;
    for (int i = 0; i < pp.free_class_count; ++i)
        space *= k;
    if (space > double(opts.candidate_cap))
        throw ResourceError("candidate_cap", "free classes span " +
                                                 std::to_string(space) +
                                                 " assignments, cap is " +
                                                 std::to_string(opts.candidate_cap));

    std::vector<int> letters(size_t(std::max(pp.free_class_count, 1)), 0);
    for (;;) {
        std::map<int, Element> assignment;
        for (size_t v = 0; v < pp.var_positions.size(); ++v) {
            if (pp.var_positions[v].empty() && profile.count(int(v)) == 0)
                continue;
            std::string w;
            for (const PositionPartition::Pos &pos : pp.var_positions[v])
                w += char(pos.letter >= 0 ? pos.letter
                                          : letters[size_t(pos.free_class)]);
            assignment.emplace(int(v), Element::monomial(k, Word(std::move(w))));
        }
        out.push_back(std::move(assignment));
        // odometer over free classes
        int i = 0;
        for (; i < pp.free_class_count; ++i) {
            if (++letters[size_t(i)] < k)
                break;
            letters[size_t(i)] = 0;
        }
        if (i >= pp.free_class_count)
            break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::map<int, Element>>
brute_force_monomial_solutions(const HomSystem &sys, const DegreeProfile &profile,
                               const SolveOptions &opts)
{
    int k = sys.alphabet;
    std::vector<int> vars;
    double space = 1;
    for (const auto &[v, deg] : profile) {
        vars.push_back(v);
        for (int i = 0; i < deg; ++i)
            space *= k;
    }
    if (space > double(opts.candidate_cap))
        throw ResourceError("candidate_cap",
                            "assignment space " + std::to_string(space) +
                                " exceeds cap " + std::to_string(opts.candidate_cap));

    std::vector<std::map<int, Element>> out;
    std::vector<std::string> words(vars.size());
    for (size_t i = 0; i < vars.size(); ++i)
        words[i].assign(size_t(profile.at(vars[i])), 0);

    for (;;) {
        std::map<int, Element> assignment;
        for (size_t i = 0; i < vars.size(); ++i)
            assignment.emplace(vars[i], Element::monomial(k, Word(words[i])));
        if (check_solution(sys, assignment))
            out.push_back(std::move(assignment));
        // odometer over all letters of all variables
        size_t vi = 0;
        int pos = 0;
        bool carry = true;
        for (vi = 0; vi < words.size() && carry; ++vi) {
            for (pos = 0; pos < int(words[vi].size()); ++pos) {
                if (++words[vi][size_t(pos)] < k) {
                    carry = false;
                    break;
                }
                words[vi][size_t(pos)] = 0;
            }
            if (!carry)
                break;
        }
        if (carry)
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fa
