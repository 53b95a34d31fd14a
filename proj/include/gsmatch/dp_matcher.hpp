#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsmatch/cost.hpp"
#include "gsmatch/shape.hpp"

namespace gsmatch {

/// Lazily evaluated C_dc for every (GS of a, GS of b) pair. Each entry is
/// computed at most once, so sharing one table across start offsets means
/// the chamfer work is paid once per shape pair.
class ChamferTable {
public:
    ChamferTable(const ShapeBundle& a, const ShapeBundle& b)
        : a_(&a), b_(&b), cols_(b.catalog().size()),
          values_(a.catalog().size() * b.catalog().size(), std::numeric_limits<double>::quiet_NaN()) {
        if (!a.has_transforms() || !b.has_transforms()) throw std::logic_error("distance transforms not computed");
    }

    double operator()(std::size_t ga, std::size_t gb) {
        double& v = values_[ga * cols_ + gb];
        if (std::isnan(v)) {
            v = chamfer_cost(a_->edge_maps()[ga], a_->transform(ga), b_->edge_maps()[gb], b_->transform(gb),
                             a_->params().tau_clamp);
            ++evaluations_;
        }
        return v;
    }
    std::size_t evaluations() const { return evaluations_; }

    /// Evaluates every pair in rows x cols in small tiles of rows, so the
    /// transforms being read stay cache-resident. Going through the DP order
    /// instead touches every row's transform once per column.
    void fill(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
        constexpr std::size_t kTile = 8;
        for (std::size_t r0 = 0; r0 < rows.size(); r0 += kTile) {
            const std::size_t r1 = std::min(rows.size(), r0 + kTile);
            for (std::size_t gb : cols)
                for (std::size_t r = r0; r < r1; ++r) (*this)(rows[r], gb);
        }
    }

private:
    const ShapeBundle* a_;
    const ShapeBundle* b_;
    std::size_t cols_;
    std::vector<double> values_;
    std::size_t evaluations_ = 0;
};

struct MatchResult {
    MatchList match_list;
    double cost = 0.0;
    std::size_t start_offset = 0;  // first segment of shape a in the cut ordering
};

/// Accumulated costs and back-pointers for one cut of shape a against shape b.
class DpTable {
public:
    enum class Move : std::uint8_t { Origin, Match, Skip1, Skip2 };

    struct Cell {
        double cost = std::numeric_limits<double>::infinity();
        Move move = Move::Origin;
        int t = 0, q = 0;           // block extents of the match ending here
        int gs1 = -1, gs2 = -1;     // pair matched at this cell
        int last1 = -1, last2 = -1; // most recent pair on the path (carried through skips)
    };

    DpTable(std::size_t m, std::size_t n) : m_(m), n_(n), cells_((m + 1) * (n + 1)) {}

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    Cell& at(std::size_t i, std::size_t j) { return cells_[i * (n_ + 1) + j]; }
    const Cell& at(std::size_t i, std::size_t j) const { return cells_[i * (n_ + 1) + j]; }
    double T(std::size_t i, std::size_t j) const { return at(i, j).cost; }

private:
    std::size_t m_, n_;
    std::vector<Cell> cells_;
};

namespace detail {

/// Groups of a that fit between the cut at segment `offset` and its end,
/// i.e. the ones the table for that cut can use.
inline std::vector<std::size_t> groups_within_cut(const ShapeBundle& s, std::size_t offset) {
    const std::size_t m = s.segments().size();
    std::vector<std::size_t> out;
    const auto& cat = s.catalog();
    for (std::size_t g = 0; g < cat.size(); ++g)
        if ((cat[g].start_seg + m - offset) % m + cat[g].seg_count <= m) out.push_back(g);
    return out;
}

inline std::vector<std::size_t> all_groups(const ShapeBundle& s) {
    std::vector<std::size_t> out(s.catalog().size());
    for (std::size_t g = 0; g < out.size(); ++g) out[g] = g;
    return out;
}

inline double pair_binary(const ShapeBundle& a, const ShapeBundle& b, std::size_t prev1, std::size_t prev2,
                          std::size_t cur1, std::size_t cur2, const CostParams& p) {
    const auto& ca = a.catalog();
    const auto& cb = b.catalog();
    const double w_ip = ca[prev1].weight + ca[cur1].weight + cb[prev2].weight + cb[cur2].weight;
    return binary_cost_terms(ca[prev1].point_count, ca[cur1].point_count, cb[prev2].point_count, cb[cur2].point_count,
                             a.angles(prev1, cur1), b.angles(prev2, cur2), w_ip, p);
}

inline MatchPair make_pair_entry(const ShapeBundle& a, const ShapeBundle& b, std::size_t ga, std::size_t gb,
                                 ChamferTable& cdc) {
    return {ga, gb, a.catalog()[ga].weight + b.catalog()[gb].weight, cdc(ga, gb)};
}

}  // namespace detail

/// Fills the block-approximated table for shape a cut at segment `offset`
/// and shape b cut at its first segment.
inline DpTable fill_table(const ShapeBundle& a, const ShapeBundle& b, std::size_t offset, ChamferTable& cdc,
                          const CostParams& p) {
    using Move = DpTable::Move;
    const std::size_t m = a.segments().size();
    const std::size_t n = b.segments().size();
    const auto& ca = a.catalog();
    const auto& cb = b.catalog();
    DpTable tab(m, n);
    tab.at(0, 0).cost = 0.0;

    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == 0 && j == 0) continue;
            DpTable::Cell best;

            // (i) every GS pair whose block ends at (i, j)
            for (std::size_t t = 1; t <= i; ++t) {
                const auto g1 = ca.find((offset + i - t) % m, t);
                if (!g1) continue;
                for (std::size_t q = 1; q <= j; ++q) {
                    const auto g2 = cb.find(j - q, q);
                    if (!g2) continue;
                    const auto& from = tab.at(i - t, j - q);
                    if (!std::isfinite(from.cost)) continue;
                    double c = from.cost + unary_cost(ca[*g1], cb[*g2], cdc(*g1, *g2), p);
                    if (from.last1 >= 0)
                        c += detail::pair_binary(a, b, static_cast<std::size_t>(from.last1),
                                                 static_cast<std::size_t>(from.last2), *g1, *g2, p);
                    const bool better = c < best.cost || (c == best.cost && best.move == Move::Match &&
                                                          static_cast<int>(t + q) < best.t + best.q);
                    if (better) {
                        best.cost = c;
                        best.move = Move::Match;
                        best.t = static_cast<int>(t);
                        best.q = static_cast<int>(q);
                        best.gs1 = best.last1 = static_cast<int>(*g1);
                        best.gs2 = best.last2 = static_cast<int>(*g2);
                    }
                }
            }
            // (ii) skip segment i of shape a, (iii) skip segment j of shape b;
            // strict comparison keeps the match > skip-1 > skip-2 preference on ties.
            if (i > 0) {
                const auto& from = tab.at(i - 1, j);
                const double c = from.cost + p.beta_skip * a.segments()[(offset + i - 1) % m].weight;
                if (c < best.cost) {
                    best = DpTable::Cell{c, Move::Skip1, 0, 0, -1, -1, from.last1, from.last2};
                }
            }
            if (j > 0) {
                const auto& from = tab.at(i, j - 1);
                const double c = from.cost + p.beta_skip * b.segments()[j - 1].weight;
                if (c < best.cost) {
                    best = DpTable::Cell{c, Move::Skip2, 0, 0, -1, -1, from.last1, from.last2};
                }
            }
            tab.at(i, j) = best;
        }
    }
    return tab;
}

/// Walks the back-pointers from (m, n) to the origin.
inline MatchList backtrace(const DpTable& tab, const ShapeBundle& a, const ShapeBundle& b, std::size_t offset,
                           ChamferTable& cdc) {
    using Move = DpTable::Move;
    const std::size_t m = tab.rows();
    MatchList ml;
    std::size_t i = tab.rows(), j = tab.cols();
    while (i > 0 || j > 0) {
        const auto& cell = tab.at(i, j);
        switch (cell.move) {
            case Move::Match:
                ml.pairs.push_back(detail::make_pair_entry(a, b, static_cast<std::size_t>(cell.gs1),
                                                           static_cast<std::size_t>(cell.gs2), cdc));
                i -= static_cast<std::size_t>(cell.t);
                j -= static_cast<std::size_t>(cell.q);
                break;
            case Move::Skip1:
                ml.skipped1.push_back((offset + i - 1) % m);
                --i;
                break;
            case Move::Skip2:
                ml.skipped2.push_back(j - 1);
                --j;
                break;
            case Move::Origin:
                throw std::logic_error("broken back-pointer chain");
        }
    }
    std::reverse(ml.pairs.begin(), ml.pairs.end());
    std::reverse(ml.skipped1.begin(), ml.skipped1.end());
    std::reverse(ml.skipped2.begin(), ml.skipped2.end());
    ml.total_cost = tab.T(tab.rows(), tab.cols());
    return ml;
}

inline MatchResult match_aligned(const ShapeBundle& a, const ShapeBundle& b, std::size_t offset, ChamferTable& cdc,
                                 const CostParams& p) {
    if (offset >= a.segments().size()) throw std::out_of_range("start offset out of range");
    cdc.fill(detail::groups_within_cut(a, offset), detail::groups_within_cut(b, 0));
    const DpTable tab = fill_table(a, b, offset, cdc, p);
    MatchResult r;
    r.match_list = backtrace(tab, a, b, offset, cdc);
    r.cost = r.match_list.total_cost;
    r.start_offset = offset;
    return r;
}

inline MatchResult match_aligned(const ShapeBundle& a, const ShapeBundle& b, const CostParams& p,
                                 std::size_t offset = 0) {
    ChamferTable cdc(a, b);
    return match_aligned(a, b, offset, cdc, p);
}

/// Rotation search: every segment of a is tried as the first one.
/// Ties go to the smallest offset.
inline MatchResult match(const ShapeBundle& a, const ShapeBundle& b, ChamferTable& cdc, const CostParams& p) {
    MatchResult best;
    best.cost = std::numeric_limits<double>::infinity();
    cdc.fill(detail::all_groups(a), detail::groups_within_cut(b, 0));  // every cut of a together uses all of these
    for (std::size_t r = 0; r < a.segments().size(); ++r) {
        MatchResult cur = match_aligned(a, b, r, cdc, p);
        if (cur.cost < best.cost) best = std::move(cur);
    }
    return best;
}

inline MatchResult match(const ShapeBundle& a, const ShapeBundle& b, const CostParams& p) {
    ChamferTable cdc(a, b);
    return match(a, b, cdc, p);
}

inline double recompute_cost(const MatchResult& r, const ShapeBundle& a, const ShapeBundle& b, const CostParams& p) {
    return match_list_cost(r.match_list, a.catalog(), a.segments(), b.catalog(), b.segments(), p);
}

inline constexpr std::size_t kExhaustiveMaxSegments = 8;

/// Exact optimum over the same cut orderings as `match`. Unlike the block
/// table, each cell keeps one entry per distinct last pair, so the binary
/// term always sees the true predecessor and nothing is discarded.
inline MatchResult exhaustive_match(const ShapeBundle& a, const ShapeBundle& b, ChamferTable& cdc,
                                    const CostParams& p) {
    const std::size_t m = a.segments().size();
    const std::size_t n = b.segments().size();
    if (m > kExhaustiveMaxSegments || n > kExhaustiveMaxSegments) throw std::invalid_argument("instance too large");
    const auto& ca = a.catalog();
    const auto& cb = b.catalog();
    const long long width = static_cast<long long>(cb.size()) + 1;
    auto key_of = [width](int l1, int l2) { return (static_cast<long long>(l1) + 1) * width + (l2 + 1); };

    struct Entry {
        double cost;
        int l1, l2;            // last pair of this state
        std::size_t pi, pj;    // predecessor cell
        long long pkey;        // predecessor state
        DpTable::Move move;
    };
    using State = std::unordered_map<long long, Entry>;

    MatchResult best;
    best.cost = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<State> cells((m + 1) * (n + 1));
        auto cell = [&](std::size_t i, std::size_t j) -> State& { return cells[i * (n + 1) + j]; };
        auto relax = [&](std::size_t i, std::size_t j, const Entry& e) {
            auto& st = cell(i, j);
            const long long k = key_of(e.l1, e.l2);
            auto it = st.find(k);
            if (it == st.end()) st.emplace(k, e);
            else if (e.cost < it->second.cost) it->second = e;
        };
        cell(0, 0).emplace(key_of(-1, -1), Entry{0.0, -1, -1, 0, 0, 0, DpTable::Move::Origin});

        for (std::size_t j = 0; j <= n; ++j) {
            for (std::size_t i = 0; i <= m; ++i) {
                for (const auto& [key, e] : cell(i, j)) {
                    if (i < m)
                        relax(i + 1, j, Entry{e.cost + p.beta_skip * a.segments()[(r + i) % m].weight, e.l1, e.l2, i, j,
                                              key, DpTable::Move::Skip1});
                    if (j < n)
                        relax(i, j + 1, Entry{e.cost + p.beta_skip * b.segments()[j].weight, e.l1, e.l2, i, j, key,
                                              DpTable::Move::Skip2});
                    for (std::size_t t = 1; i + t <= m; ++t) {
                        const auto g1 = ca.find((r + i) % m, t);
                        if (!g1) continue;
                        for (std::size_t q = 1; j + q <= n; ++q) {
                            const auto g2 = cb.find(j, q);
                            if (!g2) continue;
                            double c = e.cost + unary_cost(ca[*g1], cb[*g2], cdc(*g1, *g2), p);
                            if (e.l1 >= 0)
                                c += detail::pair_binary(a, b, static_cast<std::size_t>(e.l1),
                                                         static_cast<std::size_t>(e.l2), *g1, *g2, p);
                            relax(i + t, j + q,
                                  Entry{c, static_cast<int>(*g1), static_cast<int>(*g2), i, j, key, DpTable::Move::Match});
                        }
                    }
                }
            }
        }

        const auto& final_states = cell(m, n);
        const Entry* win = nullptr;
        long long win_key = 0;
        for (const auto& [key, e] : final_states)
            if (!win || e.cost < win->cost || (e.cost == win->cost && key < win_key)) {
                win = &e;
                win_key = key;
            }
        if (!win || !(win->cost < best.cost)) continue;

        MatchResult res;
        res.cost = win->cost;
        res.start_offset = r;
        std::size_t i = m, j = n;
        long long key = win_key;
        while (i > 0 || j > 0) {
            const Entry& e = cell(i, j).at(key);
            if (e.move == DpTable::Move::Match)
                res.match_list.pairs.push_back(detail::make_pair_entry(a, b, static_cast<std::size_t>(e.l1),
                                                                       static_cast<std::size_t>(e.l2), cdc));
            else if (e.move == DpTable::Move::Skip1)
                res.match_list.skipped1.push_back((r + i - 1) % m);
            else
                res.match_list.skipped2.push_back(j - 1);
            i = e.pi;
            j = e.pj;
            key = e.pkey;
        }
        std::reverse(res.match_list.pairs.begin(), res.match_list.pairs.end());
        std::reverse(res.match_list.skipped1.begin(), res.match_list.skipped1.end());
        std::reverse(res.match_list.skipped2.begin(), res.match_list.skipped2.end());
        res.match_list.total_cost = res.cost;
        best = std::move(res);
    }
    return best;
}

inline MatchResult exhaustive_match(const ShapeBundle& a, const ShapeBundle& b, const CostParams& p) {
    ChamferTable cdc(a, b);
    return exhaustive_match(a, b, cdc, p);
}

/// Text report: one line per pair, then the skip lists. Break-points are
/// numbered by the segment they start.
inline void write_report(std::ostream& out, const MatchResult& r, const ShapeBundle& a, const ShapeBundle& b,
                         const CostParams& p) {
    const std::size_t m = a.segments().size();
    const std::size_t n = b.segments().size();
    const auto& ca = a.catalog();
    const auto& cb = b.catalog();
    out << std::setprecision(10);
    out << "total_cost=" << r.cost << '\n';
    out << "start_offset=" << r.start_offset << '\n';
    out << "pairs=" << r.match_list.pairs.size() << '\n';
    for (const auto& pr : r.match_list.pairs) {
        const auto& g1 = ca[pr.gs1];
        const auto& g2 = cb[pr.gs2];
        out << '(' << g1.start_seg << ".." << (g1.start_seg + g1.seg_count) % m << ") <-> (" << g2.start_seg << ".."
            << (g2.start_seg + g2.seg_count) % n << ") cost=" << unary_cost(g1, g2, pr.c_dc, p)
            << " c_dc=" << pr.c_dc << '\n';
    }
    auto list = [&out](const char* name, const std::vector<std::size_t>& v) {
        out << name << '=';
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
        out << '\n';
    };
    list("skipped1", r.match_list.skipped1);
    list("skipped2", r.match_list.skipped2);
}

inline std::string report_string(const MatchResult& r, const ShapeBundle& a, const ShapeBundle& b, const CostParams& p) {
    std::ostringstream s;
    write_report(s, r, a, b, p);
    return s.str();
}

}  // namespace gsmatch
