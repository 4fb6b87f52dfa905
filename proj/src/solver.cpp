#include "fa/solver.hpp"

#include "fa/parse.hpp"

#include <algorithm>
#include <random>

namespace fa {

namespace {

constexpr long long kThresholdSaturation = (1LL << 60);

long long saturating_pow2(long long e)
{
    if (e >= 60)
        return kThresholdSaturation;
    return 1LL << e;
}

long long sat_add(long long a, long long b)
{
    return std::min(kThresholdSaturation, a + b);
}

long long sat_mul(long long a, long long b)
{
    if (a != 0 && b > kThresholdSaturation / a)
        return kThresholdSaturation;
    return a * b;
}

void require(bool cond, const std::string &msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

const Element &one_of(const Element &like)
{
    static thread_local std::optional<Element> cache;
    if (!cache || cache->alphabet() != like.alphabet())
        cache = Element::one(like.alphabet());
    return *cache;
}

/// Largest D <= want with a monomial basis within the column cap.
int feasible_degree(int k, int want, const SolveOptions &opts)
{
    int d = 0;
    while (d < want && count_words_upto(k, d + 1) <= opts.column_cap)
        ++d;
    return d;
}

} // namespace

std::optional<Element> left_divide(const Element &a, const Element &b)
{
    require(!b.is_zero(), "left_divide: divisor must be nonzero");
    require(b.top_is_monomial(), "left_divide: divisor needs a single top monomial");
    Element q = Element::zero(a.alphabet());
    Element r = a;
    const Word &lb = b.leading_monomial();
    while (!r.is_zero()) {
        const Word &lr = r.leading_monomial();
        if (!lr.has_prefix(lb))
            return std::nullopt;
        Element m = Element::monomial(a.alphabet(), lr.suffix(lr.degree() - lb.degree()));
        q += m;
        r += b * m;
    }
    return q;
}

std::optional<Element> right_divide(const Element &a, const Element &b)
{
    require(!b.is_zero(), "right_divide: divisor must be nonzero");
    require(b.top_is_monomial(), "right_divide: divisor needs a single top monomial");
    Element q = Element::zero(a.alphabet());
    Element r = a;
    const Word &lb = b.leading_monomial();
    while (!r.is_zero()) {
        const Word &lr = r.leading_monomial();
        if (!lr.has_suffix(lb))
            return std::nullopt;
        Element m = Element::monomial(a.alphabet(), lr.prefix(lr.degree() - lb.degree()));
        q += m;
        r += m * b;
    }
    return q;
}

KernelBasis ConjugationFamily::span_upto(int D) const
{
    KernelBasis kb;
    kb.degree_bound = D;
    std::vector<Element> vecs;
    for (const Element &w : generators) {
        if (w.is_zero())
            continue;
        Element member = w;
        while (!member.is_zero() && *member.degree() <= D) {
            vecs.push_back(member);
            if (modulus.is_zero())
                break;
            member *= modulus;
            if (modulus.is_one())
                break; // powers of 1 repeat
        }
    }
    // reduce-insert to a canonical row echelon basis over the monomial order
    for (Element v : vecs) {
        for (;;) {
            if (v.is_zero())
                break;
            auto it = std::find_if(kb.basis.begin(), kb.basis.end(), [&](const Element &b) {
                return b.leading_monomial() == v.leading_monomial();
            });
            if (it == kb.basis.end())
                break;
            v += *it;
        }
        if (v.is_zero())
            continue;
        kb.basis.push_back(v);
    }
    std::sort(kb.basis.begin(), kb.basis.end(), [](const Element &a, const Element &b) {
        return a.leading_monomial() < b.leading_monomial();
    });
    // full back-reduction so equal spans yield identical bases
    for (size_t i = kb.basis.size(); i-- > 0;)
        for (size_t j = 0; j < kb.basis.size(); ++j)
            if (j != i && kb.basis[j].contains(kb.basis[i].leading_monomial()))
                kb.basis[j] += kb.basis[i];
    return kb;
}

bool ConjugationFamily::contains(const Element &x) const
{
    if (x.is_zero())
        return true;
    return span_upto(*x.degree()).contains(x);
}

CentralizerResult centralizer(const Element &u, int D, const SolveOptions &opts)
{
    require(!u.is_scalar(), "centralizer: u must lie outside GF(2)");
    require(u.top_is_monomial(), "centralizer: top homogeneous part must be a monomial");
    require(D >= *u.degree(), "centralizer: degree bound below deg(u)");

    KernelBasis kb = kernel_bounded(LinearXEquation::commutator(u), D, opts);

    Element root = Element::zero(u.alphabet());
    if (primitive_root(u.leading_monomial()).exponent == 1) {
        root = u;
    } else {
        for (const Element &b : kb.basis)
            if (!b.is_zero() && *b.degree() >= 1) {
                root = b;
                break;
            }
        if (root.is_zero())
            throw FalsificationError("centralizer: kernel has no non-constant element");
    }

    // express u as a polynomial in the root
    std::vector<uint8_t> poly;
    {
        Element r = u;
        int dv = *root.degree();
        while (!r.is_zero() && *r.degree() >= 1) {
            int dr = *r.degree();
            if (dr % dv != 0)
                throw FalsificationError("centralizer: deg(u) not a multiple of deg(root)");
            int j = dr / dv;
            Element pw = root.power(j);
            if (!r.top_is_monomial() || pw.leading_monomial() != r.leading_monomial())
                throw FalsificationError("centralizer: u is not a polynomial in the root");
            if (int(poly.size()) <= j)
                poly.resize(size_t(j) + 1, 0);
            poly[size_t(j)] = 1;
            r += pw;
        }
        if (poly.empty())
            poly.resize(1, 0);
        poly[0] = r.is_one() ? 1 : 0;
    }

    ConjugationFamily fam{{Element::one(u.alphabet())}, root};
    KernelBasis span = fam.span_upto(D);
    if (!(span.basis == kb.basis))
        throw FalsificationError(
            "centralizer: span of root powers differs from the oracle kernel "
            "(dim " + std::to_string(span.dimension()) + " vs " +
            std::to_string(kb.dimension()) + ")");

    return CentralizerResult{root, std::move(poly), std::move(fam), std::move(kb)};
}

ConjugationSolveResult solve_conjugation(const Element &u, const Element &v,
                                         int D_cap, const SolveOptions &opts)
{
    require(!u.is_zero() && !v.is_zero(), "solve_conjugation: zero coefficient");
    require(u.top_is_monomial() && v.top_is_monomial(),
            "solve_conjugation: top homogeneous parts must be monomials");
    require(*u.degree() == *v.degree() && *u.degree() >= 1,
            "solve_conjugation: u and v must have equal positive degree");

    ConjugationSolveResult res;
    int du = *u.degree();
    res.theoretical_bound = sat_mul(du, sat_add(saturating_pow2(du), 2));

    int want = int(std::min<long long>(D_cap, res.theoretical_bound));
    int reach = feasible_degree(u.alphabet(), want, opts);
    res.searched_degree = reach;
    if (res.theoretical_bound > reach) {
        res.truncated = reach < want ? SearchTruncation::ColumnCap
                                     : SearchTruncation::DegreeCap;
    }

    res.kernel = kernel_bounded(LinearXEquation::intertwiner(u, v), reach, opts);
    if (res.kernel.basis.empty())
        return res;

    // minimal solution per residue class; the class of a solution is
    // determined by its degree modulo deg(v)
    int dv = *v.degree();
    int q = primitive_root(v.leading_monomial()).exponent;
    std::map<int, Element> reps;
    for (const Element &b : res.kernel.basis) {
        int cls = *b.degree() % dv;
        if (!reps.count(cls))
            reps.emplace(cls, b);
    }
    if (int(reps.size()) > q)
        throw FalsificationError(
            "solve_conjugation: more residue classes than the root exponent allows");
    {
        // all class degrees agree modulo the primitive root length
        int dt = dv / q;
        int base = -1;
        for (const auto &[cls, w] : reps) {
            if (base < 0)
                base = cls % dt;
            else if (cls % dt != base)
                throw FalsificationError(
                    "solve_conjugation: residue classes disagree modulo the period");
        }
    }

    ConjugationFamily fam{{}, v};
    for (auto &[cls, w] : reps)
        fam.generators.push_back(w);

    KernelBasis span = fam.span_upto(reach);
    if (!(span.basis == res.kernel.basis))
        throw FalsificationError(
            "solve_conjugation: family span differs from the oracle kernel");
    res.family = std::move(fam);
    return res;
}

std::pair<Element, Element> canonical_pair(const Element &s, const Element &t)
{
    auto desc_less = [](const Element &a, const Element &b) {
        const auto &ta = a.terms();
        const auto &tb = b.terms();
        size_t n = std::min(ta.size(), tb.size());
        for (size_t i = 1; i <= n; ++i) {
            const Word &wa = ta[ta.size() - i];
            const Word &wb = tb[tb.size() - i];
            if (wa != wb)
                return wa < wb;
        }
        return ta.size() < tb.size();
    };
    Element s2 = s + one_of(s);
    Element t2 = t + one_of(t);
    if (desc_less(s2, s))
        return {s2, t2};
    return {s, t};
}

bool telescopes_to_zero(const MonomialEquation &eq, const Element &s, const Element &t)
{
    require(!s.is_zero() && !t.is_zero(), "telescopes_to_zero: s, t nonzero");
    require(s.top_is_monomial(), "telescopes_to_zero: s needs a single top monomial");
    require(s.degree() == t.degree(), "telescopes_to_zero: deg(s) must equal deg(t)");
    if (*s.degree() == 0)
        return false; // scalar rule is degenerate, out of scope

    // Work over the alphabet extended by the formal unknown X. X is mapped to
    // letter 0 (every generator shifts up by one) so each rewrite strictly
    // decreases the degree-lex order and the single rule lm(s)X -> ... has no
    // self-overlap: the normal form is well defined and zero exactly on the
    // two-sided ideal generated by sX + Xt.
    int k = eq.alphabet() + 1;
    auto lift = [&](const Element &e) {
        std::vector<Word> ws;
        for (const Word &w : e.terms()) {
            std::string l = w.letters();
            for (char &c : l)
                c = char(c + 1);
            ws.emplace_back(std::move(l));
        }
        return Element(k, std::move(ws));
    };
    Element X = Element::monomial(k, Word::generator(0));

    auto side = [&](const std::vector<Element> &coeffs) {
        Element acc = lift(coeffs[0]);
        for (size_t i = 1; i < coeffs.size(); ++i)
            acc = acc * X * lift(coeffs[i]);
        return acc;
    };
    Element acc = side(eq.u()) + side(eq.v());

    Element sL = lift(s), tL = lift(t);
    std::string pattern = sL.leading_monomial().letters();
    pattern += char(0); // lm(s) followed by X
    Element s_tail = sL + Element::monomial(k, sL.leading_monomial());

    // The rule is confluent, so each monomial has a unique normal form;
    // memoizing it keeps the reduction linear in distinct words seen.
    std::map<Word, Element> memo;
    size_t guard = 0;
    auto normal_form = [&](auto &&self, const Word &w) -> const Element & {
        auto it = memo.find(w);
        if (it != memo.end())
            return it->second;
        if (++guard > 1'000'000)
            throw std::runtime_error("telescoping rewrite exceeded its budget");
        size_t pos = w.letters().find(pattern);
        Element nf = Element::zero(k);
        if (pos == std::string::npos) {
            nf = Element::monomial(k, w);
        } else {
            Element P = Element::monomial(k, w.prefix(int(pos)));
            Element Q = Element::monomial(
                k, w.suffix(w.degree() - int(pos) - int(pattern.size())));
            Element step = P * s_tail * X * Q + P * X * tL * Q;
            for (const Word &m : step.terms())
                nf += self(self, m);
        }
        return memo.emplace(w, std::move(nf)).first->second;
    };

    Element reduced = Element::zero(k);
    for (const Word &w : acc.terms())
        reduced += normal_form(normal_form, w);
    return reduced.is_zero();
}

// ---------------------------------------------------------------------------
// reduce_general
// ---------------------------------------------------------------------------

namespace {

struct Piece {
    std::vector<Element> u, v;
    std::vector<int> index; // original coefficient indices
};

std::string identity_str(const std::string &lhs, const std::string &rhs)
{
    return lhs + " = " + rhs;
}

// divisions that decline (instead of throwing) on inadmissible divisors
std::optional<Element> try_left_divide(const Element &a, const Element &b)
{
    if (b.is_zero() || !b.top_is_monomial())
        return std::nullopt;
    return left_divide(a, b);
}

std::optional<Element> try_right_divide(const Element &a, const Element &b)
{
    if (b.is_zero() || !b.top_is_monomial())
        return std::nullopt;
    return right_divide(a, b);
}

/// Try to match coefficient i of a piece against the theorem case catalog.
/// sigma is the concrete s_i (right appearance), tauprev the concrete
/// t_{i-1} (left appearance); either may be absent at the boundaries.
std::optional<CoefficientCase> match_case(const Element &ui, const Element &vi,
                                          bool is_left_boundary,
                                          bool is_right_boundary,
                                          bool left_shifted, bool right_shifted,
                                          const Element *sigma,
                                          const Element *tauprev)
{
    const int k = ui.alphabet();
    const Element one = Element::one(k);
    CoefficientCase c;

    auto done = [&](CoeffCaseTag tag, bool swapped) {
        c.tag = tag;
        c.swapped = swapped;
        return c;
    };

    if (ui == vi) {
        c.identities.push_back("u_i = v_i");
        return done(CoeffCaseTag::Equal, false);
    }

    if (is_left_boundary) {
        if (*ui.degree() != *vi.degree()) {
            const Element &big = *ui.degree() > *vi.degree() ? ui : vi;
            const Element &small = *ui.degree() > *vi.degree() ? vi : ui;
            if (big == small * *sigma) {
                c.identities.push_back(identity_str("bigger_1", "smaller_1 * s_1"));
                return done(CoeffCaseTag::BoundaryDivision, *vi.degree() > *ui.degree());
            }
            return std::nullopt;
        }
        Element tau = ui + vi;
        if (vi == tau * *sigma) {
            c.tau = tau;
            c.identities.push_back(identity_str("v_1", "tau_1 * s_1"));
            c.identities.push_back(identity_str("u_1", "tau_1 * (s_1 + 1)"));
            return done(CoeffCaseTag::BoundaryMu, false);
        }
        if (ui == tau * *sigma) {
            c.tau = tau;
            c.identities.push_back(identity_str("u_1", "tau_1 * s_1"));
            c.identities.push_back(identity_str("v_1", "tau_1 * (s_1 + 1)"));
            return done(CoeffCaseTag::BoundaryMu, true);
        }
        return std::nullopt;
    }

    if (is_right_boundary) {
        if (*ui.degree() != *vi.degree()) {
            const Element &big = *ui.degree() > *vi.degree() ? ui : vi;
            const Element &small = *ui.degree() > *vi.degree() ? vi : ui;
            if (big == *tauprev * small) {
                c.identities.push_back(identity_str("bigger_n", "t_{n-1} * smaller_n"));
                return done(CoeffCaseTag::BoundaryDivision, *ui.degree() > *vi.degree());
            }
            return std::nullopt;
        }
        Element mu = ui + vi;
        if (ui == *tauprev * mu) {
            c.mu = mu;
            c.identities.push_back(identity_str("u_n", "t_{n-1} * mu_n"));
            c.identities.push_back(identity_str("v_n", "(t_{n-1} + 1) * mu_n"));
            return done(CoeffCaseTag::BoundaryMu, false);
        }
        if (vi == *tauprev * mu) {
            c.mu = mu;
            c.identities.push_back(identity_str("v_n", "t_{n-1} * mu_n"));
            c.identities.push_back(identity_str("u_n", "(t_{n-1} + 1) * mu_n"));
            return done(CoeffCaseTag::BoundaryMu, true);
        }
        return std::nullopt;
    }

    const Element &sg = *sigma;
    const Element &tp = *tauprev;

    if (left_shifted && right_shifted) {
        if (ui * sg == tp * vi) {
            c.identities.push_back(identity_str("u_i * s_i", "t_{i-1} * v_i"));
            return done(CoeffCaseTag::ShiftQuotient, false);
        }
        if (vi * sg == tp * ui) {
            c.identities.push_back(identity_str("v_i * s_i", "t_{i-1} * u_i"));
            return done(CoeffCaseTag::ShiftQuotient, true);
        }
        if (ui == tp * vi * sg) {
            c.identities.push_back(identity_str("u_i", "t_{i-1} * v_i * s_i"));
            return done(CoeffCaseTag::ShiftAbsorbed, false);
        }
        if (vi == tp * ui * sg) {
            c.identities.push_back(identity_str("v_i", "t_{i-1} * u_i * s_i"));
            return done(CoeffCaseTag::ShiftAbsorbed, true);
        }
        return std::nullopt;
    }

    if (!left_shifted && !right_shifted) {
        Element diff = ui + vi;
        if (ui == diff * sg) {
            c.tau = diff;
            c.identities.push_back(identity_str("u_i", "tau_i * s_i"));
            c.identities.push_back(identity_str("v_i", "tau_i * (s_i + 1)"));
            return done(CoeffCaseTag::NoShiftTau, false);
        }
        if (vi == diff * sg) {
            c.tau = diff;
            c.identities.push_back(identity_str("v_i", "tau_i * s_i"));
            c.identities.push_back(identity_str("u_i", "tau_i * (s_i + 1)"));
            return done(CoeffCaseTag::NoShiftTau, true);
        }
        if (ui == tp * diff) {
            c.mu = diff;
            c.identities.push_back(identity_str("u_i", "t_{i-1} * mu_i"));
            c.identities.push_back(identity_str("v_i", "(t_{i-1} + 1) * mu_i"));
            return done(CoeffCaseTag::NoShiftMu, false);
        }
        if (vi == tp * diff) {
            c.mu = diff;
            c.identities.push_back(identity_str("v_i", "t_{i-1} * mu_i"));
            c.identities.push_back(identity_str("u_i", "(t_{i-1} + 1) * mu_i"));
            return done(CoeffCaseTag::NoShiftMu, true);
        }
        for (bool swapped : {false, true}) {
            const Element &a = swapped ? vi : ui; // a = (t_{i-1}+1) mu
            const Element &b = swapped ? ui : vi; // b = tau (s_i+1)
            auto mu = try_left_divide(a, tp + one);
            auto tau = try_right_divide(b, sg + one);
            if (mu && tau && tp * *mu == *tau * sg) {
                c.mu = *mu;
                c.tau = *tau;
                c.identities.push_back(identity_str(
                    swapped ? "v_i" : "u_i", "(t_{i-1} + 1) * mu_i"));
                c.identities.push_back(identity_str(
                    swapped ? "u_i" : "v_i", "tau_i * (s_i + 1)"));
                c.identities.push_back(identity_str("t_{i-1} * mu_i", "tau_i * s_i"));
                return done(CoeffCaseTag::NoShiftMixed, swapped);
            }
        }
        return std::nullopt;
    }

    if (!left_shifted && right_shifted) {
        // a shift starts at this coefficient
        if (ui * sg == vi) {
            c.identities.push_back(identity_str("u_i * s_i", "v_i"));
            return done(CoeffCaseTag::TransitionStart, false);
        }
        if (vi * sg == ui) {
            c.identities.push_back(identity_str("v_i * s_i", "u_i"));
            return done(CoeffCaseTag::TransitionStart, true);
        }
        for (bool swapped : {false, true}) {
            const Element &a = swapped ? vi : ui; // a s_i = t_{i-1} mu
            const Element &b = swapped ? ui : vi; // b = (t_{i-1}+1) mu
            auto mu = try_left_divide(b, tp + one);
            if (mu && a * sg == tp * *mu) {
                c.mu = *mu;
                c.identities.push_back(identity_str(
                    swapped ? "u_i" : "v_i", "(t_{i-1} + 1) * mu_i"));
                c.identities.push_back(identity_str(
                    (swapped ? "v_i" : "u_i") + std::string(" * s_i"),
                    "t_{i-1} * mu_i"));
                return done(CoeffCaseTag::TransitionStart, swapped);
            }
        }
        for (bool swapped : {false, true}) {
            const Element &a = swapped ? vi : ui; // a = (t_{i-1}+1) mu
            const Element &b = swapped ? ui : vi; // b = t_{i-1} mu s_i
            auto mu = try_left_divide(a, tp + one);
            if (mu && b == tp * *mu * sg) {
                c.mu = *mu;
                c.identities.push_back(identity_str(
                    swapped ? "v_i" : "u_i", "(t_{i-1} + 1) * mu_i"));
                c.identities.push_back(identity_str(
                    swapped ? "u_i" : "v_i", "t_{i-1} * mu_i * s_i"));
                return done(CoeffCaseTag::TransitionStart, swapped);
            }
        }
        return std::nullopt;
    }

    // left_shifted && !right_shifted: a shift ends at this coefficient
    if (tp * ui == vi) {
        c.identities.push_back(identity_str("t_{i-1} * u_i", "v_i"));
        return done(CoeffCaseTag::TransitionEnd, false);
    }
    if (tp * vi == ui) {
        c.identities.push_back(identity_str("t_{i-1} * v_i", "u_i"));
        return done(CoeffCaseTag::TransitionEnd, true);
    }
    for (bool swapped : {false, true}) {
        const Element &a = swapped ? vi : ui; // t_{i-1} a = tau s_i
        const Element &b = swapped ? ui : vi; // b = tau (s_i+1)
        auto tau = try_right_divide(b, sg + one);
        if (tau && tp * a == *tau * sg) {
            c.tau = *tau;
            c.identities.push_back(identity_str(
                swapped ? "u_i" : "v_i", "tau_i * (s_i + 1)"));
            c.identities.push_back(identity_str(
                "t_{i-1} * " + std::string(swapped ? "v_i" : "u_i"), "tau_i * s_i"));
            return done(CoeffCaseTag::TransitionEnd, swapped);
        }
    }
    for (bool swapped : {false, true}) {
        const Element &a = swapped ? vi : ui; // a = tau (s_i+1)
        const Element &b = swapped ? ui : vi; // b = t_{i-1} tau s_i
        auto tau = try_right_divide(a, sg + one);
        if (tau && b == tp * *tau * sg) {
            c.tau = *tau;
            c.identities.push_back(identity_str(
                swapped ? "v_i" : "u_i", "tau_i * (s_i + 1)"));
            c.identities.push_back(identity_str(
                swapped ? "u_i" : "v_i", "t_{i-1} * tau_i * s_i"));
            return done(CoeffCaseTag::TransitionEnd, swapped);
        }
    }
    return std::nullopt;
}

struct PieceOutcome {
    enum Kind { Unconstrained, Constrained, NoLong } kind = Unconstrained;
    Element s, t;
    std::string why; // for NoLong

    PieceOutcome() : s(Element::zero(1)), t(Element::zero(1)) {}
};

/// Candidate s (or t) values derived from a boundary pair; at most two, the
/// genuine value and its +1 companion.
std::vector<Element> boundary_candidates(const Element &a, const Element &b,
                                         bool left_end)
{
    std::vector<Element> cands;
    auto push = [&](const std::optional<Element> &q) {
        if (!q || q->is_zero())
            return;
        for (const Element &c : cands)
            if (c == *q)
                return;
        cands.push_back(*q);
        Element other = *q + Element::one(q->alphabet());
        for (const Element &c : cands)
            if (c == other)
                return;
        if (!other.is_zero())
            cands.push_back(other);
    };
    if (*a.degree() != *b.degree()) {
        const Element &big = *a.degree() > *b.degree() ? a : b;
        const Element &small = *a.degree() > *b.degree() ? b : a;
        push(left_end ? try_left_divide(big, small) : try_right_divide(big, small));
    } else {
        Element diff = a + b; // nonzero: boundary pairs are unequal here
        if (left_end) {
            push(try_left_divide(a, diff));
            push(try_left_divide(b, diff));
        } else {
            push(try_right_divide(a, diff));
            push(try_right_divide(b, diff));
        }
    }
    // try the leaner candidate first so the canonical pairing wins the race
    std::sort(cands.begin(), cands.end(), [](const Element &x, const Element &y) {
        if (x.term_count() != y.term_count())
            return x.term_count() < y.term_count();
        return x < y;
    });
    return cands;
}

PieceOutcome reduce_piece(Piece piece, std::vector<CoefficientCase> &cases,
                          std::vector<std::string> &notes);

/// Split a piece at interior index sp (u = v there, both neighboring
/// appearances unshifted) and merge the two halves.
PieceOutcome split_and_merge(const Piece &piece, int sp,
                             std::vector<CoefficientCase> &cases,
                             std::vector<std::string> &notes)
{
    CoefficientCase eqcase;
    eqcase.index = piece.index[size_t(sp)];
    eqcase.tag = CoeffCaseTag::Equal;
    eqcase.identities.push_back("u_i = v_i (equation splits here)");
    cases.push_back(eqcase);
    notes.push_back("split at coefficient " + std::to_string(piece.index[size_t(sp)]));

    Piece a, b;
    for (int i = 0; i < sp; ++i) {
        a.u.push_back(piece.u[size_t(i)]);
        a.v.push_back(piece.v[size_t(i)]);
        a.index.push_back(piece.index[size_t(i)]);
    }
    for (int i = sp + 1; i < int(piece.u.size()); ++i) {
        b.u.push_back(piece.u[size_t(i)]);
        b.v.push_back(piece.v[size_t(i)]);
        b.index.push_back(piece.index[size_t(i)]);
    }
    PieceOutcome ra = reduce_piece(std::move(a), cases, notes);
    if (ra.kind == PieceOutcome::NoLong)
        return ra;
    PieceOutcome rb = reduce_piece(std::move(b), cases, notes);
    if (rb.kind == PieceOutcome::NoLong)
        return rb;
    if (ra.kind == PieceOutcome::Unconstrained)
        return rb;
    if (rb.kind == PieceOutcome::Unconstrained)
        return ra;
    auto ca = canonical_pair(ra.s, ra.t);
    auto cb = canonical_pair(rb.s, rb.t);
    if (!(ca == cb)) {
        PieceOutcome out;
        out.kind = PieceOutcome::NoLong;
        out.why = "split pieces force different intertwiner pairs";
        return out;
    }
    return ra;
}

PieceOutcome reduce_piece(Piece piece, std::vector<CoefficientCase> &cases,
                          std::vector<std::string> &notes)
{
    PieceOutcome out;

    // boundary pairs that are exactly equal cancel off (x = 0 aside)
    while (!piece.u.empty() && piece.u.front() == piece.v.front()) {
        CoefficientCase c;
        c.index = piece.index.front();
        c.tag = CoeffCaseTag::Equal;
        c.identities.push_back("u_i = v_i (cancelled)");
        cases.push_back(c);
        piece.u.erase(piece.u.begin());
        piece.v.erase(piece.v.begin());
        piece.index.erase(piece.index.begin());
    }
    while (!piece.u.empty() && piece.u.back() == piece.v.back()) {
        CoefficientCase c;
        c.index = piece.index.back();
        c.tag = CoeffCaseTag::Equal;
        c.identities.push_back("u_i = v_i (cancelled)");
        cases.push_back(c);
        piece.u.pop_back();
        piece.v.pop_back();
        piece.index.pop_back();
    }

    int n = int(piece.u.size());
    if (n == 0)
        return out; // fully cancelled, no constraint
    if (n == 1) {
        // single coefficient, no unknown left: u = v is forced
        out.kind = PieceOutcome::NoLong;
        out.why = "coefficient " + std::to_string(piece.index[0]) +
                  " must equal its partner but does not";
        return out;
    }

    // local shift pattern of this piece
    std::vector<bool> shifted(size_t(n) - 1, false);
    {
        int cu = 0, cv = 0;
        for (int i = 0; i + 1 < n; ++i) {
            cu += *piece.u[size_t(i)].degree();
            cv += *piece.v[size_t(i)].degree();
            shifted[size_t(i)] = cu != cv;
        }
    }

    for (int i = 1; i + 1 < n; ++i)
        if (piece.u[size_t(i)] == piece.v[size_t(i)] && !shifted[size_t(i) - 1] &&
            !shifted[size_t(i)])
            return split_and_merge(piece, i, cases, notes);

    std::vector<Element> s_cands =
        boundary_candidates(piece.u.front(), piece.v.front(), true);
    std::vector<Element> t_cands =
        boundary_candidates(piece.u.back(), piece.v.back(), false);
    if (s_cands.empty() || t_cands.empty()) {
        out.kind = PieceOutcome::NoLong;
        out.why = "boundary division has no exact quotient";
        return out;
    }

    const Element one = Element::one(piece.u[0].alphabet());
    for (const Element &s0 : s_cands) {
        for (const Element &t0 : t_cands) {
            if (*s0.degree() != *t0.degree())
                continue;
            // assign each appearance the pair (s,t) or (s+1,t+1)
            for (uint32_t eps = 0; eps < (uint32_t(1) << (n - 1)); ++eps) {
                std::vector<Element> sig, tau;
                for (int i = 0; i < n - 1; ++i) {
                    bool plus = eps >> i & 1;
                    sig.push_back(plus ? s0 + one : s0);
                    tau.push_back(plus ? t0 + one : t0);
                }
                std::vector<CoefficientCase> local;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    const Element *sg = i < n - 1 ? &sig[size_t(i)] : nullptr;
                    const Element *tp = i > 0 ? &tau[size_t(i) - 1] : nullptr;
                    bool ls = i > 0 && shifted[size_t(i) - 1];
                    bool rs = i < n - 1 && shifted[size_t(i)];
                    auto c = match_case(piece.u[size_t(i)], piece.v[size_t(i)],
                                        i == 0, i == n - 1, ls, rs, sg, tp);
                    if (!c) {
                        ok = false;
                        break;
                    }
                    c->index = piece.index[size_t(i)];
                    c->s_variant = i < n - 1 ? int(eps >> i & 1) : 0;
                    c->t_variant = i > 0 ? int(eps >> (i - 1) & 1) : 0;
                    local.push_back(std::move(*c));
                }
                if (!ok)
                    continue;
                // per-coefficient identities can hold for a mispaired
                // (s+1, t) combination; the symbolic forward reduction is the
                // global pairing check, so it gates acceptance here
                if (!telescopes_to_zero(MonomialEquation(piece.u, piece.v), s0, t0))
                    continue;
                cases.insert(cases.end(), local.begin(), local.end());
                out.kind = PieceOutcome::Constrained;
                auto [cs, ct] = canonical_pair(s0, t0);
                out.s = cs;
                out.t = ct;
                return out;
            }
        }
    }
    out.kind = PieceOutcome::NoLong;
    out.why = "no coefficient decomposition matches the case catalog";
    return out;
}

} // namespace

GeneralReduction reduce_general(const MonomialEquation &eq,
                                const std::optional<Element> &hint, int D_cap,
                                const SolveOptions &opts)
{
    require(eq.degree_balanced(), "reduce_general: equation is degree-unbalanced");
    bool any_diff = false;
    for (int i = 0; i < eq.blocks(); ++i)
        any_diff |= !(eq.u()[size_t(i)] == eq.v()[size_t(i)]);
    require(any_diff, "reduce_general: all u_i = v_i, every x is a solution");
    for (int i = 0; i < eq.blocks(); ++i) {
        const Element &ue = eq.u()[size_t(i)];
        const Element &ve = eq.v()[size_t(i)];
        require(ue.top_is_monomial() && ve.top_is_monomial(),
                "reduce_general: coefficient tops must be monomials");
        require(is_square_free(ue.leading_monomial()) &&
                    is_square_free(ve.leading_monomial()),
                "reduce_general: coefficient top monomials must be square-free");
    }

    GeneralReduction out;
    out.profile = shift_profile(eq, 0);

    if (out.profile.min_positive) {
        int d = *out.profile.min_positive;
        for (int i = 0; i < eq.blocks(); ++i)
            if (*eq.u()[size_t(i)].degree() <= d || *eq.v()[size_t(i)].degree() <= d) {
                out.notes.push_back(
                    "proof-scope condition deg(coefficient) > d violated at index " +
                    std::to_string(i));
                break;
            }
    }

    Piece whole;
    whole.u = eq.u();
    whole.v = eq.v();
    for (int i = 0; i < eq.blocks(); ++i)
        whole.index.push_back(i);

    PieceOutcome po = reduce_piece(std::move(whole), out.decomposition.cases,
                                   out.notes);
    std::sort(out.decomposition.cases.begin(), out.decomposition.cases.end(),
              [](const CoefficientCase &a, const CoefficientCase &b) {
                  return a.index < b.index;
              });

    if (po.kind == PieceOutcome::NoLong) {
        out.outcome = ReduceOutcome::NoLongSolutions;
        out.notes.push_back(po.why);
        return out;
    }
    if (po.kind == PieceOutcome::Unconstrained)
        throw std::invalid_argument(
            "reduce_general: all u_i = v_i after cancellation, every x is a solution");

    out.outcome = ReduceOutcome::Reduced;
    out.s = po.s;
    out.t = po.t;

    long long ds = *po.s.degree();
    long long S = eq.total_u_degree();
    if (out.profile.all_zero())
        out.threshold = sat_mul(2, sat_add(sat_add(2, saturating_pow2(ds + 2)), S));
    else if (eq.blocks() == 2)
        out.threshold = sat_mul(2, sat_mul(S, S)); // S = deg(u1)+deg(u2) = deg(big1)+deg(big2)
    else
        out.threshold =
            sat_add(sat_mul(2, sat_add(2, saturating_pow2(ds + 2))), sat_mul(2, sat_mul(S, S)));

    out.telescoped = telescopes_to_zero(eq, po.s, po.t);
    if (!out.telescoped)
        throw FalsificationError(
            "reduce_general: decomposition verified but symbolic forward "
            "reduction does not cancel");

    // solutions within the caller's oracle budget, for the family report
    try {
        if (eq.blocks() == 2) {
            int reach = feasible_degree(eq.alphabet(), D_cap, opts);
            KernelBasis kb = kernel_bounded(
                LinearXEquation::two_block(eq.u()[0], eq.u()[1], eq.v()[0],
                                           eq.v()[1]),
                reach, opts);
            out.short_solutions = kb.basis;
        } else {
            for (Element &x : exhaustive_solutions(eq, D_cap, opts))
                if (!x.is_zero())
                    out.short_solutions.push_back(std::move(x));
        }
    } catch (const ResourceError &e) {
        out.notes.push_back(std::string("short-solution oracle skipped: ") + e.what());
    }

    if (hint) {
        if (!eq.holds(*hint))
            throw std::invalid_argument("reduce_general: hint does not solve the equation");
        if (hint->is_zero())
            throw std::invalid_argument("reduce_general: hint must be nonzero");

        // (s,t) along the hint: minimal positive-degree pair in the kernel of
        // the bilinear system s*x1 + x1*t = 0
        int dst = 0;
        for (const Element &e : eq.u())
            dst = std::max(dst, *e.degree());
        const Element one1 = Element::one(eq.alphabet());
        MultiKernelBasis mk = kernel_multi(
            {{{one1, *hint}}, {{*hint, one1}}}, eq.alphabet(), dst, opts);
        std::optional<std::pair<Element, Element>> along;
        for (const auto &tuple : mk.basis) {
            const Element &cs = tuple[0];
            const Element &ct = tuple[1];
            if (cs.is_zero() || *cs.degree() < 1)
                continue;
            if (!along || *cs.degree() < *along->first.degree())
                along = {cs, ct};
        }
        if (!along)
            throw FalsificationError(
                "reduce_general: hint admits no intertwiner pair of positive degree");
        auto canon_hint = canonical_pair(along->first, along->second);
        auto canon_div = canonical_pair(po.s, po.t);
        if (!(canon_hint == canon_div))
            throw FalsificationError(
                "reduce_general: hint route and division route disagree on (s,t)");
        out.notes.push_back("hint route agrees with division route");

        // periodicity side condition: every period of the substituted top
        // monomial should come from the period of the hint's top monomial
        Word W = eq.u()[0].leading_monomial();
        const Word &x0 = hint->leading_monomial();
        for (int i = 1; i < eq.blocks(); ++i)
            W = W * x0 * eq.u()[size_t(i)].leading_monomial();
        int pi = x0.degree() >= 1 ? primitive_root(x0).root.degree() : 0;
        bool contained = true;
        for (int p = 1; 2 * p <= W.degree(); ++p) {
            bool period = true;
            for (int i = 0; i + p < W.degree() && period; ++i)
                period = W.letter(i) == W.letter(i + p);
            if (period && (pi == 0 || p % pi != 0)) {
                contained = false;
                break;
            }
        }
        out.notes.push_back(contained
                                ? "top-monomial periodicity contained in the hint's period"
                                : "top-monomial periodicity check unverifiable for this hint");
    }

    return out;
}

TwoBlockResult reduce_two_block(const Element &u1, const Element &u2,
                                const Element &v1, const Element &v2, int D_cap,
                                const SolveOptions &opts)
{
    for (const Element *e : {&u1, &u2, &v1, &v2}) {
        require(!e->is_zero(), "reduce_two_block: zero coefficient");
        require(e->top_is_monomial(), "reduce_two_block: coefficient tops must be monomials");
        require(is_square_free(e->leading_monomial()),
                "reduce_two_block: coefficient top monomials must be square-free");
    }
    require(*u1.degree() > *v1.degree(),
            "reduce_two_block: requires deg(u1) > deg(v1); equal degrees are "
            "handled by reduce_general");
    require(*u1.degree() + *u2.degree() == *v1.degree() + *v2.degree(),
            "reduce_two_block: equation is degree-unbalanced");

    TwoBlockResult out;
    long long S = *u1.degree() + *v2.degree();
    long long threshold = sat_mul(2, sat_mul(S, S));

    auto s = left_divide(u1, v1);
    auto t = right_divide(v2, u2);

    int reach = feasible_degree(u1.alphabet(),
                                int(std::min<long long>(D_cap, threshold)), opts);
    out.oracle_degree = reach;
    out.oracle_kernel =
        kernel_bounded(LinearXEquation::two_block(u1, u2, v1, v2), reach, opts);

    if (!s || !t) {
        out.outcome = ReduceOutcome::NoLongSolutions;
        out.notes.push_back(std::string("division failure: ") +
                            (!s ? "u1 is not a right multiple of v1" : "") +
                            (!s && !t ? "; " : "") +
                            (!t ? "v2 is not a left multiple of u2" : ""));
        out.notes.push_back("no solution of degree > " + std::to_string(threshold) +
                            " exists; oracle solutions up to degree " +
                            std::to_string(reach) + " attached");
        return out;
    }

    ReductionPair pair{*s, *t, threshold, {}};
    for (const Element &b : out.oracle_kernel.basis)
        if (*b.degree() <= threshold)
            pair.short_solutions.push_back(b);

    // successful divisions make the equivalence exact at every degree:
    // u1 x u2 + v1 x v2 = v1 (s x + x t) u2
    if (!(u1 == v1 * *s) || !(v2 == *t * u2))
        throw FalsificationError("reduce_two_block: division identities fail");

    ConjugationSolveResult st =
        solve_conjugation(*s, *t, std::max(D_cap, reach), opts);
    if (st.family)
        out.st_family = st.family;

    // cross-check: the oracle kernel must coincide with the kernel of sx+xt
    KernelBasis st_kernel =
        kernel_bounded(LinearXEquation::intertwiner(*s, *t), reach, opts);
    if (!(st_kernel.basis == out.oracle_kernel.basis))
        throw FalsificationError(
            "reduce_two_block: oracle kernel differs from the kernel of sx=xt");

    out.outcome = ReduceOutcome::Reduced;
    out.pair = std::move(pair);
    return out;
}

// ---------------------------------------------------------------------------
// verify_family
// ---------------------------------------------------------------------------

namespace {

Element random_poly_of(const Element &w, const Element &modulus, int max_power,
                       std::mt19937_64 &rng)
{
    Element acc = Element::zero(w.alphabet());
    for (int j = 0; j <= max_power; ++j)
        if (rng() & 1)
            acc += w * modulus.power(j);
    return acc;
}

} // namespace

VerifyReport verify_family(const MonomialEquation &eq, const SolutionFamily &fam,
                           int D, const SolveOptions &opts, uint64_t seed)
{
    VerifyReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);

    int reach = feasible_degree(eq.alphabet(), D, opts);
    rep.oracle_degree = reach;
    if (reach < D)
        rep.checks.push_back({"oracle-reach",
                              CheckStatus::Skipped,
                              "column cap limits the oracle to degree " +
                                  std::to_string(reach)});

    const bool linear = eq.blocks() == 2;

    if (const auto *cf = std::get_if<ConjugationFamily>(&fam.value)) {
        // membership: random members, including degrees beyond the oracle
        {
            CheckResult c{"membership", CheckStatus::Pass, ""};
            int max_pow = 1;
            if (!cf->modulus.is_zero() && *cf->modulus.degree() >= 1)
                max_pow = D / *cf->modulus.degree() + 2;
            for (int trial = 0; trial < 40 && c.status == CheckStatus::Pass; ++trial) {
                Element x = Element::zero(eq.alphabet());
                for (const Element &w : cf->generators)
                    x += random_poly_of(w, cf->modulus, max_pow, rng);
                if (!eq.holds(x)) {
                    c.status = CheckStatus::Fail;
                    c.detail = "family member fails the equation: " + to_string(x);
                }
            }
            rep.checks.push_back(std::move(c));
        }
        // completeness against the oracle
        {
            CheckResult c{"completeness", CheckStatus::Pass, ""};
            KernelBasis span = cf->span_upto(reach);
            if (linear) {
                LinearXEquation lin = LinearXEquation::two_block(
                    eq.u()[0], eq.u()[1], eq.v()[0], eq.v()[1]);
                KernelBasis kb = kernel_bounded(lin, reach, opts);
                for (const Element &b : kb.basis)
                    if (!span.contains(b)) {
                        c.status = CheckStatus::Fail;
                        c.detail = "oracle solution outside the family: " + to_string(b);
                        break;
                    }
                if (c.status == CheckStatus::Pass &&
                    span.dimension() != kb.dimension()) {
                    c.status = CheckStatus::Fail;
                    c.detail = "family span dimension " + std::to_string(span.dimension()) +
                               " differs from oracle dimension " +
                               std::to_string(kb.dimension());
                }
            } else {
                std::vector<Element> sols;
                try {
                    sols = exhaustive_solutions(eq, reach, opts);
                } catch (const ResourceError &e) {
                    c.status = CheckStatus::Skipped;
                    c.detail = std::string("oracle out of reach: ") + e.what();
                }
                if (c.status == CheckStatus::Pass)
                    for (const Element &x : sols)
                        if (!x.is_zero() && !span.contains(x)) {
                            c.status = CheckStatus::Fail;
                            c.detail = "oracle solution outside the family: " + to_string(x);
                            break;
                        }
            }
            rep.checks.push_back(std::move(c));
        }
        rep.checks.push_back({"threshold", CheckStatus::Skipped,
                              "no reduction pair attached to a conjugation family"});
        return rep;
    }

    const auto &rp = std::get<ReductionPair>(fam.value);
    KernelBasis st_kernel =
        kernel_bounded(LinearXEquation::intertwiner(rp.s, rp.t), reach, opts);

    // membership: solutions of sx = xt and the listed short solutions solve eq
    {
        CheckResult c{"membership", CheckStatus::Pass, ""};
        for (const Element &b : st_kernel.basis)
            if (!eq.holds(b)) {
                c.status = CheckStatus::Fail;
                c.detail = "solution of sx=xt fails the equation: " + to_string(b);
                break;
            }
        for (int trial = 0; trial < 20 && c.status == CheckStatus::Pass; ++trial) {
            Element x = Element::zero(eq.alphabet());
            for (const Element &b : st_kernel.basis)
                if (rng() & 1)
                    x += b;
            if (!eq.holds(x)) {
                c.status = CheckStatus::Fail;
                c.detail = "combination of sx=xt solutions fails: " + to_string(x);
            }
        }
        for (const Element &x : rp.short_solutions)
            if (c.status == CheckStatus::Pass && !eq.holds(x)) {
                c.status = CheckStatus::Fail;
                c.detail = "listed short solution fails the equation: " + to_string(x);
            }
        rep.checks.push_back(std::move(c));
    }
    // completeness: oracle solutions lie in {x : sx = xt} or the short list
    {
        CheckResult c{"completeness", CheckStatus::Pass, ""};
        auto in_family = [&](const Element &x) {
            if (st_kernel.contains(x))
                return true;
            return std::find(rp.short_solutions.begin(), rp.short_solutions.end(),
                             x) != rp.short_solutions.end();
        };
        if (linear) {
            LinearXEquation lin = LinearXEquation::two_block(
                eq.u()[0], eq.u()[1], eq.v()[0], eq.v()[1]);
            KernelBasis kb = kernel_bounded(lin, reach, opts);
            for (const Element &b : kb.basis)
                if (!in_family(b)) {
                    c.status = CheckStatus::Fail;
                    c.detail = "oracle solution outside the family: " + to_string(b);
                    break;
                }
        } else {
            std::vector<Element> sols;
            try {
                sols = exhaustive_solutions(eq, reach, opts);
            } catch (const ResourceError &e) {
                c.status = CheckStatus::Skipped;
                c.detail = std::string("oracle out of reach: ") + e.what();
            }
            if (c.status == CheckStatus::Pass)
                for (const Element &x : sols)
                    if (!x.is_zero() && !in_family(x)) {
                        c.status = CheckStatus::Fail;
                        c.detail = "oracle solution outside the family: " + to_string(x);
                        break;
                    }
        }
        rep.checks.push_back(std::move(c));
    }
    // threshold: solutions above the trigger degree solve sx = xt
    {
        CheckResult c{"threshold", CheckStatus::Pass, ""};
        if (rp.threshold >= reach) {
            c.status = CheckStatus::Skipped;
            c.detail = "threshold " + std::to_string(rp.threshold) +
                       " exceeds oracle reach " + std::to_string(reach) +
                       "; completeness above it is claimed by the theorems only";
        } else if (linear) {
            LinearXEquation lin = LinearXEquation::two_block(
                eq.u()[0], eq.u()[1], eq.v()[0], eq.v()[1]);
            KernelBasis kb = kernel_bounded(lin, reach, opts);
            for (const Element &b : kb.basis)
                if (!b.is_zero() && *b.degree() > rp.threshold &&
                    !st_kernel.contains(b)) {
                    c.status = CheckStatus::Fail;
                    c.detail = "long oracle solution outside sx=xt: " + to_string(b);
                    break;
                }
        } else {
            std::vector<Element> sols;
            try {
                sols = exhaustive_solutions(eq, reach, opts);
            } catch (const ResourceError &) {
                sols.clear();
                c.status = CheckStatus::Skipped;
                c.detail = "oracle out of reach";
            }
            for (const Element &x : sols)
                if (!x.is_zero() && *x.degree() > rp.threshold &&
                    !st_kernel.contains(x)) {
                    c.status = CheckStatus::Fail;
                    c.detail = "long oracle solution outside sx=xt: " + to_string(x);
                    break;
                }
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

} // namespace fa
