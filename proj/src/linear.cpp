#include "fa/linear.hpp"

#include "fa/kernels.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace fa {

namespace {

constexpr uint64_t kCountSaturation = uint64_t(1) << 62;

// Degree-lex rank arithmetic. rank(w) = offset(|w|) + base-k value of w.
struct RankSpace {
    int k;
    std::vector<uint64_t> pow;    // k^i, saturated
    std::vector<uint64_t> offset; // number of words of degree < i

    RankSpace(int k, int max_len) : k(k)
    {
        pow.resize(size_t(max_len) + 2, kCountSaturation);
        offset.resize(size_t(max_len) + 2, kCountSaturation);
        uint64_t p = 1, off = 0;
        for (int i = 0; i <= max_len + 1; ++i) {
            offset[size_t(i)] = off;
            pow[size_t(i)] = p;
            if (off >= kCountSaturation || p >= kCountSaturation / uint64_t(k))
                break;
            off += p;
            p *= uint64_t(k);
        }
    }

    bool representable(int len) const
    {
        return len + 1 < int(offset.size()) &&
               offset[size_t(len) + 1] < kCountSaturation;
    }

    uint64_t value(const Word &w) const
    {
        uint64_t v = 0;
        for (int i = 0; i < w.degree(); ++i)
            v = v * uint64_t(k) + uint64_t(w.letter(i));
        return v;
    }

    Word word(int len, uint64_t value) const
    {
        std::string s(size_t(len), 0);
        for (int i = len - 1; i >= 0; --i) {
            s[size_t(i)] = char(value % uint64_t(k));
            value /= uint64_t(k);
        }
        return Word(std::move(s));
    }

    // (len, value) of the word with the given rank
    std::pair<int, uint64_t> decode(uint64_t rank) const
    {
        int len = 0;
        while (offset[size_t(len) + 1] <= rank)
            ++len;
        return {len, rank - offset[size_t(len)]};
    }
};

struct BuiltSystem {
    std::vector<uint64_t> row_key;       // one per row, ascending
    std::vector<uint32_t> row_ptr;       // CSR into row_cols
    std::vector<uint32_t> row_cols;
    std::vector<uint8_t> row_parity;     // rhs bit per row
    uint64_t ncols = 0;
};

// Assemble the sparse GF(2) system over product monomials. Entry (p, c)
// records that unknown monomial c contributes to product monomial p; pairs
// appearing an even number of times cancel.
BuiltSystem build_system(
    const std::vector<std::vector<std::pair<Element, Element>>> &blocks,
    const Element &rhs, int k, int D, const SolveOptions &opts)
{
    uint64_t ncols_block = count_words_upto(k, D);
    if (ncols_block > opts.column_cap)
        throw ResourceError("column_cap",
                            "monomial basis needs " + std::to_string(ncols_block) +
                                " columns, cap is " + std::to_string(opts.column_cap));
    uint64_t ncols = ncols_block * blocks.size();

    int max_coeff = 0;
    for (const auto &block : blocks)
        for (const auto &[a, b] : block)
            for (const Element *e : {&a, &b})
                if (!e->is_zero())
                    max_coeff = std::max(max_coeff, *e->degree());
    int max_len = D + 2 * max_coeff + 1;
    if (!rhs.is_zero())
        max_len = std::max(max_len, *rhs.degree() + 1);
    RankSpace rs(k, max_len);
    if (!rs.representable(max_len))
        throw ResourceError("column_cap", "product monomial space too large to index");

    std::vector<std::pair<uint64_t, uint32_t>> entries;
    {
        size_t per_col = 0;
        for (const auto &block : blocks)
            for (const auto &[a, b] : block)
                per_col += a.term_count() * b.term_count();
        entries.reserve(size_t(ncols_block) * per_col);
    }

    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        for (const auto &[a, b] : blocks[bi]) {
            for (const Word &aw : a.terms()) {
                uint64_t aval = rs.value(aw);
                for (const Word &bw : b.terms()) {
                    uint64_t bval = rs.value(bw);
                    for (uint64_t col = 0; col < ncols_block; ++col) {
                        auto [mlen, mval] = rs.decode(col);
                        int plen = aw.degree() + mlen + bw.degree();
                        uint64_t pval =
                            (aval * rs.pow[size_t(mlen)] + mval) *
                                rs.pow[size_t(bw.degree())] +
                            bval;
                        entries.emplace_back(rs.offset[size_t(plen)] + pval,
                                             uint32_t(bi * ncols_block + col));
                    }
                }
            }
        }
    }
    std::sort(entries.begin(), entries.end());

    // rhs terms as (key, sentinel) markers so they group with matching rows
    std::vector<uint64_t> rhs_keys;
    for (const Word &w : rhs.terms())
        rhs_keys.push_back(rs.offset[size_t(w.degree())] + rs.value(w));
    std::sort(rhs_keys.begin(), rhs_keys.end());

    BuiltSystem sys;
    sys.ncols = ncols;
    size_t i = 0, ri = 0;
    while (i < entries.size() || ri < rhs_keys.size()) {
        uint64_t key;
        if (i >= entries.size())
            key = rhs_keys[ri];
        else if (ri >= rhs_keys.size())
            key = entries[i].first;
        else
            key = std::min(entries[i].first, rhs_keys[ri]);

        sys.row_key.push_back(key);
        sys.row_ptr.push_back(uint32_t(sys.row_cols.size()));
        uint8_t parity = 0;
        while (ri < rhs_keys.size() && rhs_keys[ri] == key) {
            parity ^= 1;
            ++ri;
        }
        while (i < entries.size() && entries[i].first == key) {
            uint32_t col = entries[i].second;
            size_t j = i;
            while (j < entries.size() && entries[j].first == key &&
                   entries[j].second == col)
                ++j;
            if ((j - i) % 2 == 1)
                sys.row_cols.push_back(col);
            i = j;
        }
        sys.row_parity.push_back(parity);
    }
    sys.row_ptr.push_back(uint32_t(sys.row_cols.size()));
    return sys;
}

struct PeelResult {
    std::vector<uint8_t> col_alive;   // 1 = still unknown
    std::vector<uint8_t> col_value;   // forced value for dead columns
    std::vector<uint32_t> core_rows;  // rows with >= 2 live columns
    std::vector<uint8_t> core_parity; // their rhs after substitutions
    bool consistent = true;
};

// Rows with a single live unknown force its value; propagate to exhaustion.
// Leaves a (usually tiny) irreducible core for dense elimination.
PeelResult peel(const BuiltSystem &sys)
{
    size_t nrows = sys.row_key.size();
    PeelResult pr;
    pr.col_alive.assign(size_t(sys.ncols), 1);
    pr.col_value.assign(size_t(sys.ncols), 0);

    // column -> incident rows (CSR)
    std::vector<uint32_t> col_deg(size_t(sys.ncols) + 1, 0);
    for (uint32_t c : sys.row_cols)
        ++col_deg[size_t(c) + 1];
    std::partial_sum(col_deg.begin(), col_deg.end(), col_deg.begin());
    std::vector<uint32_t> col_rows(sys.row_cols.size());
    {
        std::vector<uint32_t> fill(col_deg.begin(), col_deg.end() - 1);
        for (size_t r = 0; r < nrows; ++r)
            for (uint32_t ci = sys.row_ptr[r]; ci < sys.row_ptr[r + 1]; ++ci)
                col_rows[fill[sys.row_cols[ci]]++] = uint32_t(r);
    }

    std::vector<uint32_t> live(nrows);
    std::vector<uint8_t> parity(sys.row_parity);
    std::vector<uint32_t> queue;
    for (size_t r = 0; r < nrows; ++r) {
        live[r] = sys.row_ptr[r + 1] - sys.row_ptr[r];
        if (live[r] == 1)
            queue.push_back(uint32_t(r));
        else if (live[r] == 0 && parity[r])
            pr.consistent = false;
    }

    for (size_t qi = 0; qi < queue.size(); ++qi) {
        uint32_t r = queue[qi];
        if (live[r] != 1)
            continue;
        uint32_t c = UINT32_MAX;
        for (uint32_t ci = sys.row_ptr[r]; ci < sys.row_ptr[r + 1]; ++ci)
            if (pr.col_alive[sys.row_cols[ci]]) {
                c = sys.row_cols[ci];
                break;
            }
        pr.col_alive[c] = 0;
        pr.col_value[c] = parity[r];
        for (uint32_t ri = col_deg[c]; ri < col_deg[size_t(c) + 1]; ++ri) {
            uint32_t r2 = col_rows[ri];
            if (live[r2] == 0)
                continue;
            --live[r2];
            parity[r2] ^= pr.col_value[c];
            if (live[r2] == 1)
                queue.push_back(r2);
            else if (live[r2] == 0 && parity[r2])
                pr.consistent = false;
        }
    }

    for (size_t r = 0; r < nrows; ++r) {
        if (live[r] >= 2)
            pr.core_rows.push_back(uint32_t(r));
        else if (live[r] == 0 && parity[r])
            pr.consistent = false;
    }
    // re-derive core row parities after substitution of forced values
    pr.core_parity.resize(pr.core_rows.size());
    for (size_t i = 0; i < pr.core_rows.size(); ++i)
        pr.core_parity[i] = parity[pr.core_rows[i]];
    return pr;
}

// Dense bit-packed RREF of the peeled core, leftmost-pivot choice.
struct CoreSolve {
    std::vector<uint32_t> live_cols;          // global column ids, ascending
    std::vector<uint32_t> pivot_of;           // per live col: pivot row idx or UINT32_MAX
    std::vector<std::vector<uint64_t>> rows;  // RREF pivot rows (bit over live cols + parity)
    std::vector<uint32_t> pivot_col;          // per pivot row: live-col position
    bool consistent = true;
};

CoreSolve solve_core(const BuiltSystem &sys, const PeelResult &pr)
{
    CoreSolve cs;
    for (uint32_t c = 0; c < sys.ncols; ++c)
        if (pr.col_alive[c])
            cs.live_cols.push_back(c);
    std::vector<uint32_t> pos_of(size_t(sys.ncols), UINT32_MAX);
    for (size_t i = 0; i < cs.live_cols.size(); ++i)
        pos_of[cs.live_cols[i]] = uint32_t(i);

    size_t nbits = cs.live_cols.size() + 1; // +1 parity bit at the end
    size_t nwords = (nbits + 63) / 64;
    cs.pivot_of.assign(cs.live_cols.size(), UINT32_MAX);

    std::vector<uint64_t> work(nwords);
    for (size_t i = 0; i < pr.core_rows.size(); ++i) {
        uint32_t r = pr.core_rows[i];
        std::fill(work.begin(), work.end(), 0);
        for (uint32_t ci = sys.row_ptr[r]; ci < sys.row_ptr[r + 1]; ++ci) {
            uint32_t c = sys.row_cols[ci];
            if (pr.col_alive[c]) {
                uint32_t p = pos_of[c];
                work[p / 64] ^= uint64_t(1) << (p % 64);
            }
        }
        if (pr.core_parity[i]) {
            size_t p = cs.live_cols.size();
            work[p / 64] ^= uint64_t(1) << (p % 64);
        }
        // reduce against existing pivots
        for (;;) {
            size_t lead = nbits;
            for (size_t wi = 0; wi < nwords; ++wi)
                if (work[wi]) {
                    lead = wi * 64 + size_t(std::countr_zero(work[wi]));
                    break;
                }
            if (lead >= nbits)
                break;
            if (lead == cs.live_cols.size()) {
                cs.consistent = false; // 0 = 1
                break;
            }
            uint32_t pv = cs.pivot_of[lead];
            if (pv == UINT32_MAX) {
                cs.pivot_of[lead] = uint32_t(cs.rows.size());
                cs.rows.push_back(work);
                cs.pivot_col.push_back(uint32_t(lead));
                break;
            }
            kernels::xor_rows(work.data(), cs.rows[pv].data(), nwords);
        }
        if (!cs.consistent)
            break;
    }

    // back-substitute to reduced echelon form
    for (size_t i = cs.rows.size(); i-- > 0;) {
        for (size_t j = 0; j < cs.rows.size(); ++j) {
            if (j == i)
                continue;
            uint32_t p = cs.pivot_col[i];
            if (cs.rows[j][p / 64] >> (p % 64) & 1)
                kernels::xor_rows(cs.rows[j].data(), cs.rows[i].data(), nwords);
        }
    }
    return cs;
}

Word word_of_rank(const RankSpace &rs, uint64_t rank)
{
    auto [len, val] = rs.decode(rank);
    return rs.word(len, val);
}

struct SolvedSystem {
    std::vector<std::vector<Element>> kernel; // tuples, one Element per block
    std::optional<std::vector<Element>> particular;
};

SolvedSystem solve_blocks(
    const std::vector<std::vector<std::pair<Element, Element>>> &blocks,
    const Element &rhs, int k, int D, const SolveOptions &opts)
{
    BuiltSystem sys = build_system(blocks, rhs, k, D, opts);
    PeelResult pr = peel(sys);
    CoreSolve cs = solve_core(sys, pr);

    uint64_t ncols_block = count_words_upto(k, D);
    int max_coeff = 0;
    for (const auto &block : blocks)
        for (const auto &[a, b] : block)
            max_coeff = std::max({max_coeff, a.is_zero() ? 0 : *a.degree(),
                                  b.is_zero() ? 0 : *b.degree()});
    RankSpace rs(k, D + 2 * max_coeff + 1);

    auto tuple_from_bits = [&](const std::vector<std::pair<uint32_t, uint8_t>> &bits) {
        std::vector<std::vector<Word>> words(blocks.size());
        for (auto [col, bit] : bits) {
            if (!bit)
                continue;
            size_t bi = col / ncols_block;
            words[bi].push_back(word_of_rank(rs, col % ncols_block));
        }
        std::vector<Element> tuple;
        for (auto &ws : words)
            tuple.emplace_back(k, std::move(ws));
        return tuple;
    };

    SolvedSystem out;

    size_t nlive = cs.live_cols.size();
    auto bit_at = [&](const std::vector<uint64_t> &row, size_t p) {
        return uint8_t(row[p / 64] >> (p % 64) & 1);
    };

    // kernel: one basis tuple per free live column
    for (size_t f = 0; f < nlive; ++f) {
        if (cs.pivot_of[f] != UINT32_MAX)
            continue;
        std::vector<std::pair<uint32_t, uint8_t>> bits;
        bits.emplace_back(cs.live_cols[f], 1);
        for (size_t i = 0; i < cs.rows.size(); ++i)
            if (bit_at(cs.rows[i], f))
                bits.emplace_back(cs.live_cols[cs.pivot_col[i]], 1);
        out.kernel.push_back(tuple_from_bits(bits));
    }

    if (pr.consistent && cs.consistent) {
        std::vector<std::pair<uint32_t, uint8_t>> bits;
        for (uint32_t c = 0; c < sys.ncols; ++c)
            if (!pr.col_alive[c] && pr.col_value[c])
                bits.emplace_back(c, 1);
        for (size_t i = 0; i < cs.rows.size(); ++i)
            bits.emplace_back(cs.live_cols[cs.pivot_col[i]],
                              bit_at(cs.rows[i], nlive));
        out.particular = tuple_from_bits(bits);
    }
    return out;
}

} // namespace

uint64_t count_words_upto(int k, int D)
{
    if (k < 1 || D < 0)
        throw std::invalid_argument("count_words_upto: k >= 1, D >= 0 required");
    uint64_t total = 0, p = 1;
    for (int d = 0; d <= D; ++d) {
        total += p;
        if (total >= kCountSaturation || p >= kCountSaturation / uint64_t(k))
            return kCountSaturation;
        p *= uint64_t(k);
    }
    return total;
}

std::vector<Word> monomial_basis(int k, int D, const SolveOptions &opts)
{
    uint64_t n = count_words_upto(k, D);
    if (n > opts.column_cap)
        throw ResourceError("column_cap",
                            "monomial basis of size " + std::to_string(n) +
                                " exceeds cap " + std::to_string(opts.column_cap));
    RankSpace rs(k, D + 1);
    std::vector<Word> out;
    out.reserve(size_t(n));
    for (uint64_t r = 0; r < n; ++r)
        out.push_back(word_of_rank(rs, r));
    return out;
}

Element KernelBasis::reduce(Element e) const
{
    // basis is ordered by increasing leading monomial; scan from the top
    for (size_t i = basis.size(); i-- > 0;) {
        if (e.is_zero())
            return e;
        if (e.contains(basis[i].leading_monomial()))
            e += basis[i];
    }
    return e;
}

KernelBasis kernel_bounded(const LinearXEquation &eq, int D, const SolveOptions &opts)
{
    if (!eq.rhs.is_zero())
        throw std::invalid_argument("kernel_bounded expects rhs = 0; use solve_affine");
    SolvedSystem s = solve_blocks({eq.summands}, eq.rhs, eq.alphabet(), D, opts);
    KernelBasis kb;
    kb.degree_bound = D;
    for (auto &tuple : s.kernel)
        kb.basis.push_back(std::move(tuple[0]));
    for (const Element &x : kb.basis)
        if (!eq.apply(x).is_zero())
            throw std::logic_error("kernel basis element fails the equation");
    return kb;
}

AffineSolution solve_affine(const LinearXEquation &eq, int D, const SolveOptions &opts)
{
    SolvedSystem s = solve_blocks({eq.summands}, eq.rhs, eq.alphabet(), D, opts);
    AffineSolution out;
    out.kernel.degree_bound = D;
    for (auto &tuple : s.kernel)
        out.kernel.basis.push_back(std::move(tuple[0]));
    if (s.particular) {
        Element x = std::move((*s.particular)[0]);
        if (eq.apply(x) != eq.rhs)
            throw std::logic_error("particular solution fails the equation");
        out.particular = std::move(x);
    }
    return out;
}

MultiKernelBasis
kernel_multi(const std::vector<std::vector<std::pair<Element, Element>>> &blocks,
             int alphabet, int D, const SolveOptions &opts)
{
    SolvedSystem s =
        solve_blocks(blocks, Element::zero(alphabet), alphabet, D, opts);
    MultiKernelBasis out;
    out.degree_bound = D;
    out.basis = std::move(s.kernel);
    return out;
}

std::vector<Element> exhaustive_solutions(const MonomialEquation &eq, int D,
                                          const SolveOptions &opts, int enum_alphabet)
{
    int k = eq.alphabet();
    int ke = enum_alphabet > 0 ? enum_alphabet : k;
    if (ke > k)
        throw std::invalid_argument("enumeration alphabet exceeds equation alphabet");

    uint64_t m = count_words_upto(ke, D);
    if (m >= 63 || (uint64_t(1) << m) > opts.candidate_cap)
        throw ResourceError("candidate_cap",
                            "2^" + std::to_string(m) + " candidates exceed cap " +
                                std::to_string(opts.candidate_cap));
    SolveOptions loose = opts;
    loose.column_cap = std::max<size_t>(loose.column_cap, size_t(m));
    std::vector<Word> words = monomial_basis(ke, D, loose);

    // The window of a side at width w is determined by the top w layers of x
    // (window arithmetic is exact), so the candidate tree can be pruned per
    // layer: fix x's layers from the top down and discard a partial layer
    // assignment as soon as the two sides disagree inside the window it pins.
    auto trunc = [&](const Element &e, int width) {
        int top = *e.degree();
        std::vector<Word> keep;
        for (const Word &w : e.terms())
            if (w.degree() > top - width)
                keep.push_back(w);
        return Element(e.alphabet(), std::move(keep));
    };
    // product of two windows, truncated as it is formed
    auto wmul = [&](const Element &a, const Element &b, int width) {
        int cutoff = *a.degree() + *b.degree() - width;
        std::vector<Word> prods;
        for (const Word &wa : a.terms())
            for (const Word &wb : b.terms())
                if (wa.degree() + wb.degree() > cutoff)
                    prods.push_back(wa * wb);
        return Element(k, std::move(prods));
    };

    int max_width = D + 2;
    std::vector<std::vector<Element>> tu(size_t(max_width) + 1),
        tv(size_t(max_width) + 1);
    for (int w = 1; w <= max_width; ++w)
        for (int i = 0; i < eq.blocks(); ++i) {
            tu[size_t(w)].push_back(trunc(eq.u()[size_t(i)], w));
            tv[size_t(w)].push_back(trunc(eq.v()[size_t(i)], w));
        }

    auto window_side = [&](const std::vector<std::vector<Element>> &tc,
                           const Element &xt, int width) {
        const std::vector<Element> &coeffs = tc[size_t(width)];
        Element acc = coeffs[0];
        for (size_t i = 1; i < coeffs.size(); ++i) {
            acc = wmul(acc, xt, width);
            acc = wmul(acc, coeffs[i], width);
        }
        return acc;
    };

    std::vector<size_t> deg_begin(size_t(D) + 2, words.size());
    for (size_t i = 0; i < words.size(); ++i)
        deg_begin[size_t(words[i].degree())] =
            std::min(deg_begin[size_t(words[i].degree())], i);
    deg_begin[size_t(D) + 1] = words.size();

    std::vector<Element> out;
    out.push_back(Element::zero(k)); // both sides vanish at x = 0

    // descend(g, layer, acc): layers g..layer+1 of x are fixed in acc
    auto descend = [&](auto &&self, int g, int layer, std::vector<Word> &acc) -> void {
        if (layer < 0) {
            Element x(k, acc);
            if (eq.holds(x))
                out.push_back(std::move(x));
            return;
        }
        size_t lo = deg_begin[size_t(layer)], hi = deg_begin[size_t(layer) + 1];
        size_t count = hi - lo;
        uint64_t first = layer == g ? 1 : 0; // the top layer must be nonzero
        for (uint64_t mask = first; mask < (uint64_t(1) << count); ++mask) {
            size_t before = acc.size();
            for (size_t i = 0; i < count; ++i)
                if (mask >> i & 1)
                    acc.push_back(words[lo + i]);
            Element partial(k, acc);
            int width = g - layer + 1;
            if (window_side(tu, partial, width) == window_side(tv, partial, width))
                self(self, g, layer - 1, acc);
            acc.resize(before);
        }
    };

    for (int g = 0; g <= D; ++g) {
        std::vector<Word> acc;
        descend(descend, g, g, acc);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fa
