#include "fa/family_json.hpp"
#include "fa/homsys.hpp"
#include "fa/kernels.hpp"
#include "fa/parse.hpp"
#include "fa/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

// exit-code contract: 0 success, 1 falsification/contradiction,
// 2 usage/parse error, 3 resource-cap refusal
constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunConfig {
    int alphabet = 0; // 0 = infer from inputs
    int max_degree = 6;
    size_t column_cap = fa::SolveOptions{}.column_cap;
    size_t candidate_cap = fa::SolveOptions{}.candidate_cap;
    std::string format = "text";
    uint64_t seed = 12345;

    fa::SolveOptions opts() const { return {column_cap, candidate_cap}; }
    json to_json() const
    {
        return {{"alphabet", alphabet},     {"max_degree", max_degree},
                {"column_cap", column_cap}, {"candidate_cap", candidate_cap},
                {"format", format},         {"seed", seed},
                {"kernel", fa::kernels::active_kernel_name()}};
    }
};

void add_common(CLI::App *cmd, RunConfig &cfg, bool with_degree = true)
{
    cmd->add_option("--alphabet", cfg.alphabet,
                    "alphabet size k (default: inferred from inputs)");
    if (with_degree)
        cmd->add_option("--max-degree,-D", cfg.max_degree, "oracle degree bound");
    cmd->add_option("--column-cap", cfg.column_cap, "unknown-monomial cap");
    cmd->add_option("--candidate-cap", cfg.candidate_cap, "enumeration cap");
    cmd->add_option("--format", cfg.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
}

void apply_env_caps(RunConfig &cfg)
{
    if (const char *e = std::getenv("FA_COLUMN_CAP"))
        cfg.column_cap = std::strtoull(e, nullptr, 10);
    if (const char *e = std::getenv("FA_CANDIDATE_CAP"))
        cfg.candidate_cap = std::strtoull(e, nullptr, 10);
}

// parse several elements over one shared alphabet
std::vector<fa::Element> parse_all(const std::vector<std::string> &texts, int &k)
{
    if (k <= 0) {
        k = 1;
        for (const std::string &t : texts)
            k = std::max(k, fa::parse_element(t).alphabet());
    }
    std::vector<fa::Element> out;
    for (const std::string &t : texts)
        out.push_back(fa::parse_element(t, k));
    return out;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    size_t from = 0;
    for (;;) {
        size_t to = s.find(sep, from);
        if (to == std::string::npos) {
            out.push_back(s.substr(from));
            return out;
        }
        out.push_back(s.substr(from, to - from));
        from = to + 1;
    }
}

// --- eval expression grammar: sums of products of atoms, ^ for powers ------

struct ExprParser {
    std::string_view text;
    size_t pos = 0;
    int alphabet;

    explicit ExprParser(std::string_view t, int k) : text(t), alphabet(k) {}

    void skip()
    {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool at(char c)
    {
        skip();
        return pos < text.size() && text[pos] == c;
    }
    [[noreturn]] void fail(const std::string &msg)
    {
        throw fa::ParseError(1, int(pos) + 1, msg);
    }

    fa::Element parse()
    {
        fa::Element e = sum();
        skip();
        if (pos != text.size())
            fail("unexpected trailing input");
        return e;
    }
    fa::Element sum()
    {
        fa::Element acc = product();
        while (at('+')) {
            ++pos;
            acc += product();
        }
        return acc;
    }
    fa::Element product()
    {
        fa::Element acc = atom();
        for (;;) {
            if (at('*')) {
                ++pos;
                acc *= atom();
            } else if (at('^')) {
                ++pos;
                skip();
                size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (start == pos)
                    fail("expected exponent");
                acc = acc.power(std::stoi(std::string(text.substr(start, pos - start))));
            } else {
                skip();
                if (pos < text.size() &&
                    (text[pos] == '(' || std::islower(static_cast<unsigned char>(text[pos])) ||
                     text[pos] == '0' || text[pos] == '1'))
                    acc *= atom();
                else
                    return acc;
            }
        }
    }
    fa::Element atom()
    {
        skip();
        if (pos >= text.size())
            fail("expected atom");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            fa::Element e = sum();
            if (!at(')'))
                fail("expected ')'");
            ++pos;
            return e;
        }
        if (c == '0') {
            ++pos;
            return fa::Element::zero(alphabet);
        }
        if (c == '1') {
            ++pos;
            return fa::Element::one(alphabet);
        }
        if (c >= 'a' && c <= 'z') {
            std::string letters;
            while (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'z') {
                letters += char(text[pos] - 'a');
                ++pos;
            }
            return fa::Element::monomial(alphabet, fa::Word(std::move(letters)));
        }
        fail("expected '0', '1', letters or '('");
    }
};

void emit(const RunConfig &cfg, const json &j, const std::string &text_form)
{
    if (cfg.format == "json") {
        json out = j;
        out["config"] = cfg.to_json();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text_form;
    }
}

std::string fam_kind_text(const fa::SolutionFamily &fam)
{
    std::string s;
    if (const auto *cf = std::get_if<fa::ConjugationFamily>(&fam.value)) {
        s += "conjugation family, modulus " + fa::to_string(cf->modulus) + "\n";
        for (const fa::Element &w : cf->generators)
            s += "  generator " + fa::to_string(w) + "\n";
    } else {
        const auto &rp = std::get<fa::ReductionPair>(fam.value);
        s += "reduction to sx = xt with s = " + fa::to_string(rp.s) +
             ", t = " + fa::to_string(rp.t) +
             ", threshold " + std::to_string(rp.threshold) + "\n";
        for (const fa::Element &x : rp.short_solutions)
            s += "  short solution " + fa::to_string(x) + "\n";
    }
    return s;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"computations in the free associative algebra over GF(2)"};
    app.require_subcommand(1);

    RunConfig cfg;
    apply_env_caps(cfg);

    std::string expr, u_text, v_text, u_coeffs, v_coeffs, eq_text, hint_text;
    std::string family_file, homsys_file, profile_text;
    bool exhaustive = false;
    int enum_alphabet = 0;
    int scan_max = 3;

    CLI::App *c_eval = app.add_subcommand("eval", "evaluate an element expression");
    c_eval->add_option("--expr", expr, "expression: +, *, ^, parentheses")->required();
    add_common(c_eval, cfg, false);

    CLI::App *c_cent = app.add_subcommand("centralizer", "centralizer generator of u");
    c_cent->add_option("--u", u_text)->required();
    add_common(c_cent, cfg);

    CLI::App *c_conj =
        app.add_subcommand("solve-conjugation", "solution family of ux = xv");
    c_conj->add_option("--u", u_text)->required();
    c_conj->add_option("--v", v_text)->required();
    add_common(c_conj, cfg);

    CLI::App *c_reduce =
        app.add_subcommand("reduce", "reduce a one-variable equation to sx = xt");
    c_reduce->add_option("--u-coeffs", u_coeffs, "u1;u2;...")->required();
    c_reduce->add_option("--v-coeffs", v_coeffs, "v1;v2;...")->required();
    c_reduce->add_option("--hint", hint_text, "a known long solution");
    add_common(c_reduce, cfg);

    CLI::App *c_oracle = app.add_subcommand("oracle", "bounded-degree brute-force solver");
    c_oracle->add_option("--eq", eq_text, "linear form: \"A.x.B + x.C = 0|<element>\"");
    c_oracle->add_option("--u-coeffs", u_coeffs, "general equation, with --v-coeffs");
    c_oracle->add_option("--v-coeffs", v_coeffs);
    c_oracle->add_flag("--exhaustive", exhaustive,
                       "force the nonlinear enumeration oracle");
    c_oracle->add_option("--enum-alphabet", enum_alphabet,
                         "restrict candidate monomials to the first k' letters");
    add_common(c_oracle, cfg);

    CLI::App *c_hom = app.add_subcommand("homsys", "homogeneous monomial systems");
    c_hom->add_option("--file", homsys_file)->required()->check(CLI::ExistingFile);
    c_hom->add_option("--profile", profile_text, "x=2,y=1 (default: declared degrees)");
    c_hom->add_option("--scan-max", scan_max, "scan profiles up to this degree");
    add_common(c_hom, cfg, false);

    CLI::App *c_verify =
        app.add_subcommand("verify", "verify a solution family against the oracle");
    c_verify->add_option("--u-coeffs", u_coeffs)->required();
    c_verify->add_option("--v-coeffs", v_coeffs)->required();
    c_verify->add_option("--family", family_file, "family JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(c_verify, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c_eval) {
            int k = cfg.alphabet > 0 ? cfg.alphabet : 26;
            fa::Element e = ExprParser(expr, k).parse();
            json j{{"element", fa::to_string(e)},
                   {"degree", e.degree() ? json(*e.degree()) : json(nullptr)},
                   {"terms", e.term_count()}};
            emit(cfg, j, fa::to_string(e) + "\n");
        } else if (*c_cent) {
            int k = cfg.alphabet;
            fa::Element u = parse_all({u_text}, k)[0];
            fa::CentralizerResult r = fa::centralizer(u, cfg.max_degree, cfg.opts());
            fa::SolutionFamily fam{r.family};
            json j{{"root", fa::to_string(r.root)},
                   {"poly", r.poly},
                   {"kernel_dimension", r.kernel.dimension()},
                   {"family", fa::family_to_json(fam)}};
            emit(cfg, j,
                 "root " + fa::to_string(r.root) + "\nkernel dimension " +
                     std::to_string(r.kernel.dimension()) + "\n" + fam_kind_text(fam));
        } else if (*c_conj) {
            int k = cfg.alphabet;
            auto uv = parse_all({u_text, v_text}, k);
            fa::ConjugationSolveResult r =
                fa::solve_conjugation(uv[0], uv[1], cfg.max_degree, cfg.opts());
            json j{{"searched_degree", r.searched_degree},
                   {"theoretical_bound", r.theoretical_bound},
                   {"truncated", r.truncated == fa::SearchTruncation::None ? "none"
                                 : r.truncated == fa::SearchTruncation::DegreeCap
                                     ? "degree-cap"
                                     : "column-cap"},
                   {"kernel_dimension", r.kernel.dimension()}};
            std::string txt = "searched degree " + std::to_string(r.searched_degree) +
                              ", kernel dimension " +
                              std::to_string(r.kernel.dimension()) + "\n";
            if (r.family) {
                fa::SolutionFamily fam{*r.family};
                j["family"] = fa::family_to_json(fam);
                txt += fam_kind_text(fam);
            } else {
                j["family"] = nullptr;
                txt += r.certified_empty() ? "no solutions (certified)\n"
                                           : "no solutions found (search truncated)\n";
            }
            emit(cfg, j, txt);
        } else if (*c_reduce) {
            int k = cfg.alphabet;
            std::vector<std::string> all = split(u_coeffs, ';');
            size_t nu = all.size();
            for (const std::string &s : split(v_coeffs, ';'))
                all.push_back(s);
            if (!hint_text.empty())
                all.push_back(hint_text);
            std::vector<fa::Element> parsed = parse_all(all, k);
            std::optional<fa::Element> hint;
            if (!hint_text.empty()) {
                hint = parsed.back();
                parsed.pop_back();
            }
            fa::MonomialEquation eq(
                std::vector<fa::Element>(parsed.begin(), parsed.begin() + nu),
                std::vector<fa::Element>(parsed.begin() + nu, parsed.end()));
            fa::GeneralReduction r =
                fa::reduce_general(eq, hint, cfg.max_degree, cfg.opts());
            json j{{"outcome", r.outcome == fa::ReduceOutcome::Reduced
                                   ? "reduced"
                                   : "no-long-solutions"},
                   {"notes", r.notes}};
            std::string txt;
            if (r.outcome == fa::ReduceOutcome::Reduced) {
                fa::SolutionFamily fam{
                    fa::ReductionPair{*r.s, *r.t, r.threshold, {}}};
                j["family"] = fa::family_to_json(fam);
                j["telescoped"] = r.telescoped;
                json cases = json::array();
                for (const fa::CoefficientCase &c : r.decomposition.cases) {
                    json cj{{"index", c.index},
                            {"swapped", c.swapped},
                            {"s_variant", c.s_variant},
                            {"t_variant", c.t_variant},
                            {"identities", c.identities}};
                    if (c.mu)
                        cj["mu"] = fa::to_string(*c.mu);
                    if (c.tau)
                        cj["tau"] = fa::to_string(*c.tau);
                    cases.push_back(cj);
                }
                j["decomposition"] = cases;
                txt = fam_kind_text(fam);
                txt += "forward guarantee: exact symbolic cancellation\n";
            } else {
                txt = "no long solutions";
                for (const std::string &n : r.notes)
                    txt += "\n  " + n;
                txt += "\n";
            }
            emit(cfg, j, txt);
        } else if (*c_oracle) {
            int k = cfg.alphabet;
            if (!eq_text.empty()) {
                // summands "A.x.B" joined by '+', then "= 0" or "= <element>"
                size_t eqpos = eq_text.find('=');
                if (eqpos == std::string::npos)
                    throw fa::ParseError(1, 1, "oracle equation needs '='");
                std::string lhs = eq_text.substr(0, eqpos);
                std::string rhs = eq_text.substr(eqpos + 1);
                std::vector<std::pair<std::string, std::string>> raw;
                for (const std::string &sm : split(lhs, '+')) {
                    std::vector<std::string> parts = split(sm, '.');
                    std::string a = "1", b = "1";
                    if (parts.size() == 1) {
                        // bare "x"
                    } else if (parts.size() == 2) {
                        std::string p0 = parts[0], p1 = parts[1];
                        auto strip = [](std::string s) {
                            s.erase(0, s.find_first_not_of(" \t"));
                            s.erase(s.find_last_not_of(" \t") + 1);
                            return s;
                        };
                        if (strip(p0) == "x")
                            b = p1;
                        else
                            a = p0;
                    } else if (parts.size() == 3) {
                        a = parts[0];
                        b = parts[2];
                    } else {
                        throw fa::ParseError(1, 1, "summand must be A.x.B");
                    }
                    raw.emplace_back(a, b);
                }
                std::vector<std::string> texts;
                for (auto &[a, b] : raw) {
                    texts.push_back(a);
                    texts.push_back(b);
                }
                texts.push_back(rhs);
                std::vector<fa::Element> parsed = parse_all(texts, k);
                fa::LinearXEquation lin{{}, parsed.back()};
                for (size_t i = 0; i + 1 < parsed.size(); i += 2)
                    lin.summands.emplace_back(parsed[i], parsed[i + 1]);
                fa::AffineSolution sol =
                    fa::solve_affine(lin, cfg.max_degree, cfg.opts());
                json basis = json::array();
                for (const fa::Element &b : sol.kernel.basis)
                    basis.push_back(fa::to_string(b));
                json j{{"kernel_dimension", sol.kernel.dimension()},
                       {"kernel_basis", basis},
                       {"particular", sol.particular
                                          ? json(fa::to_string(*sol.particular))
                                          : json(nullptr)}};
                std::string txt =
                    "kernel dimension " + std::to_string(sol.kernel.dimension()) + "\n";
                for (const fa::Element &b : sol.kernel.basis)
                    txt += "  " + fa::to_string(b) + "\n";
                if (!lin.rhs.is_zero())
                    txt += sol.particular
                               ? "particular " + fa::to_string(*sol.particular) + "\n"
                               : "inconsistent at this degree bound\n";
                emit(cfg, j, txt);
            } else if (!u_coeffs.empty() && !v_coeffs.empty()) {
                std::vector<std::string> all = split(u_coeffs, ';');
                size_t nu = all.size();
                for (const std::string &s : split(v_coeffs, ';'))
                    all.push_back(s);
                std::vector<fa::Element> parsed = parse_all(all, k);
                fa::MonomialEquation eq(
                    std::vector<fa::Element>(parsed.begin(), parsed.begin() + nu),
                    std::vector<fa::Element>(parsed.begin() + nu, parsed.end()));
                std::vector<fa::Element> sols = fa::exhaustive_solutions(
                    eq, cfg.max_degree, cfg.opts(), enum_alphabet);
                (void)exhaustive;
                json arr = json::array();
                std::string txt =
                    std::to_string(sols.size()) + " solutions of degree <= " +
                    std::to_string(cfg.max_degree) + "\n";
                for (const fa::Element &x : sols) {
                    arr.push_back(fa::to_string(x));
                    txt += "  " + fa::to_string(x) + "\n";
                }
                emit(cfg, json{{"solutions", arr}}, txt);
            } else {
                throw CLI::ValidationError("oracle needs --eq or --u-coeffs/--v-coeffs");
            }
        } else if (*c_hom) {
            std::ifstream in(homsys_file);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            fa::HomSystem sys = fa::parse_homsys(text, cfg.alphabet);

            std::vector<fa::DegreeProfile> profiles;
            if (!profile_text.empty()) {
                fa::DegreeProfile p;
                for (const std::string &kv : split(profile_text, ',')) {
                    std::vector<std::string> parts = split(kv, '=');
                    if (parts.size() != 2)
                        throw fa::ParseError(1, 1, "profile entries are name=degree");
                    int v = sys.var_id(parts[0]);
                    if (v < 0)
                        throw fa::ParseError(1, 1, "unknown variable " + parts[0]);
                    p[v] = std::stoi(parts[1]);
                }
                profiles.push_back(std::move(p));
            } else {
                bool declared = true;
                for (const auto &d : sys.declared_degree)
                    declared = declared && d.has_value();
                if (declared && !sys.var_names.empty()) {
                    profiles.push_back(fa::declared_profile(sys));
                } else {
                    // scan balanced profiles up to --scan-max
                    size_t nvars = sys.var_names.size();
                    std::vector<int> degs(nvars, 1);
                    for (;;) {
                        fa::DegreeProfile p;
                        for (size_t i = 0; i < nvars; ++i)
                            p[int(i)] = degs[i];
                        bool balanced = true;
                        try {
                            for (const auto &e : sys.equations) {
                                int dl = 0, dr = 0;
                                for (const auto &s : e.lhs)
                                    dl += s.is_var ? p[s.id]
                                                   : *sys.coef_values[size_t(s.id)].degree();
                                for (const auto &s : e.rhs)
                                    dr += s.is_var ? p[s.id]
                                                   : *sys.coef_values[size_t(s.id)].degree();
                                if (dl != dr)
                                    balanced = false;
                            }
                        } catch (...) {
                            balanced = false;
                        }
                        if (balanced)
                            profiles.push_back(p);
                        size_t i = 0;
                        for (; i < nvars; ++i) {
                            if (++degs[i] <= scan_max)
                                break;
                            degs[i] = 1;
                        }
                        if (i >= nvars)
                            break;
                    }
                }
            }

            bool any_contradiction = false;
            json runs = json::array();
            std::string txt;
            for (const fa::DegreeProfile &p : profiles) {
                fa::PositionPartition pp = fa::align(sys, p);
                json run;
                json pj;
                for (const auto &[v, d] : p)
                    pj[sys.var_names[size_t(v)]] = d;
                run["profile"] = pj;
                txt += "profile";
                for (const auto &[v, d] : p)
                    txt += " " + sys.var_names[size_t(v)] + "=" + std::to_string(d);
                if (pp.contradiction) {
                    any_contradiction = true;
                    run["contradiction"] = pp.detail;
                    txt += ": contradiction (" + pp.detail + ")\n";
                } else {
                    run["free_classes"] = pp.free_class_count;
                    auto sols = fa::enumerate_monomial_solutions(sys, p, cfg.opts());
                    json sj = json::array();
                    txt += ": " + std::to_string(pp.free_class_count) +
                           " free classes, " + std::to_string(sols.size()) +
                           " monomial solutions\n";
                    for (const auto &a : sols) {
                        json aj;
                        std::string line = "  ";
                        for (const auto &[v, e] : a) {
                            aj[sys.var_names[size_t(v)]] = fa::to_string(e);
                            line += sys.var_names[size_t(v)] + "=" + fa::to_string(e) + " ";
                        }
                        sj.push_back(aj);
                        txt += line + "\n";
                    }
                    run["solutions"] = sj;
                }
                runs.push_back(run);
            }
            emit(cfg, json{{"runs", runs}}, txt);
            if (any_contradiction && profiles.size() == 1)
                return kExitFalsified;
        } else if (*c_verify) {
            int k = cfg.alphabet;
            std::vector<std::string> all = split(u_coeffs, ';');
            size_t nu = all.size();
            for (const std::string &s : split(v_coeffs, ';'))
                all.push_back(s);
            std::vector<fa::Element> parsed = parse_all(all, k);
            fa::MonomialEquation eq(
                std::vector<fa::Element>(parsed.begin(), parsed.begin() + nu),
                std::vector<fa::Element>(parsed.begin() + nu, parsed.end()));
            std::ifstream in(family_file);
            json fj = json::parse(in);
            fa::SolutionFamily fam = fa::family_from_json(fj, eq.alphabet());
            fa::VerifyReport rep =
                fa::verify_family(eq, fam, cfg.max_degree, cfg.opts(), cfg.seed);
            std::string txt;
            for (const fa::CheckResult &c : rep.checks) {
                txt += c.name + ": " +
                       (c.status == fa::CheckStatus::Pass   ? "pass"
                        : c.status == fa::CheckStatus::Fail ? "FAIL"
                                                            : "skipped");
                if (!c.detail.empty())
                    txt += " (" + c.detail + ")";
                txt += "\n";
            }
            txt += rep.passed() ? "verdict: pass\n" : "verdict: FALSIFIED\n";
            emit(cfg, fa::report_to_json(rep), txt);
            if (!rep.passed())
                return kExitFalsified;
        }
        return kExitOk;
    } catch (const fa::ResourceError &e) {
        std::cerr << "resource cap '" << e.cap_name << "': " << e.what() << "\n";
        return kExitResource;
    } catch (const fa::FalsificationError &e) {
        std::cerr << "falsification: " << e.what() << "\n";
        return kExitFalsified;
    } catch (const fa::ParseError &e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFalsified;
    }
}
