#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gsmatch/dp_matcher.hpp"
#include "gsmatch/params.hpp"
#include "gsmatch/shape.hpp"

namespace gsmatch {

namespace fs = std::filesystem;

struct DatasetEntry {
    std::string id;     // file stem, "<class>-<instance>"
    std::string label;  // class; merged shapes use "A+B"
    std::string path;
    Contour contour;
};

struct Dataset {
    std::vector<DatasetEntry> entries;
    std::vector<std::string> ignored;  // files whose name does not follow the layout

    std::size_t size() const { return entries.size(); }
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (const auto& e : entries) out.push_back(e.label);
        return out;
    }
    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        for (const auto& e : entries) out.push_back(e.id);
        return out;
    }
};

/// Class label of a "<class>-<instance>" stem; empty when there is no dash.
inline std::string label_from_stem(const std::string& stem) {
    const auto dash = stem.rfind('-');
    if (dash == std::string::npos || dash == 0) return {};
    return stem.substr(0, dash);
}

/// Classes a label stands for: "A+B" -> {A, B}.
inline std::vector<std::string> constituent_labels(const std::string& label) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : label) {
        if (ch == '+') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

/// Loads every regular file of `dir` named "<class>-<instance>.<ext>", sorted by name.
inline Dataset load_dataset(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(dir))
        if (de.is_regular_file() && de.path().filename().string()[0] != '.') files.push_back(de.path());
    std::sort(files.begin(), files.end());
    Dataset d;
    for (const auto& f : files) {
        const std::string stem = f.stem().string();
        const std::string label = label_from_stem(stem);
        if (label.empty()) {
            d.ignored.push_back(f.filename().string());
            continue;
        }
        d.entries.push_back({stem, label, f.string(), load_contour(f.string())});
    }
    if (d.entries.empty()) throw std::runtime_error("empty dataset: " + dir);
    return d;
}

inline void save_dataset(const std::string& dir, const std::vector<std::pair<std::string, Contour>>& shapes) {
    fs::create_directories(dir);
    for (const auto& [id, c] : shapes) {
        std::ofstream out(fs::path(dir) / (id + ".txt"));
        if (!out) throw std::runtime_error("cannot write into " + dir);
        write_point_list(out, c);
    }
}

/// Rows are queries, columns are gallery shapes. Square for a dataset against itself.
struct DistanceMatrix {
    std::vector<std::string> row_ids, col_ids;
    std::vector<std::string> row_labels, col_labels;
    std::vector<double> values;
    std::vector<bool> failed_rows;

    std::size_t rows() const { return row_ids.size(); }
    std::size_t cols() const { return col_ids.size(); }
    double& at(std::size_t i, std::size_t j) { return values[i * cols() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }

    static DistanceMatrix square(const std::vector<std::string>& ids, const std::vector<std::string>& labels) {
        return rect(ids, labels, ids, labels);
    }
    static DistanceMatrix rect(const std::vector<std::string>& rids, const std::vector<std::string>& rlabels,
                               const std::vector<std::string>& cids, const std::vector<std::string>& clabels) {
        DistanceMatrix m;
        m.row_ids = rids;
        m.row_labels = rlabels;
        m.col_ids = cids;
        m.col_labels = clabels;
        m.values.assign(rids.size() * cids.size(), std::numeric_limits<double>::quiet_NaN());
        m.failed_rows.assign(rids.size(), false);
        return m;
    }
};

/// Plain text: a header row of column ids, then one row per query (id first).
inline void write_matrix(std::ostream& out, const DistanceMatrix& m) {
    out << "id";
    for (const auto& c : m.col_ids) out << '\t' << c;
    out << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << m.row_ids[i];
        for (std::size_t j = 0; j < m.cols(); ++j) out << '\t' << m.at(i, j);
        out << '\n';
    }
}

inline DistanceMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty matrix file");
    std::istringstream hs(line);
    std::string tok;
    hs >> tok;
    std::vector<std::string> cols;
    while (hs >> tok) cols.push_back(tok);
    std::vector<std::string> rows;
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        ls >> tok;
        rows.push_back(tok);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            std::string v;
            if (!(ls >> v)) throw std::runtime_error("short matrix row: " + tok);
            vals.push_back(std::stod(v));
        }
    }
    std::vector<std::string> rl, cl;
    for (const auto& r : rows) rl.push_back(label_from_stem(r));
    for (const auto& c : cols) cl.push_back(label_from_stem(c));
    DistanceMatrix m = DistanceMatrix::rect(rows, rl, cols, cl);
    m.values = std::move(vals);
    return m;
}

/// 64-bit FNV-1a, used for cache keys.
class Fnv1a {
public:
    void add(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < n; ++k) {
            h_ ^= p[k];
            h_ *= 0x100000001b3ULL;
        }
    }
    void add(const std::string& s) {
        add(s.data(), s.size());
        add("\0", 1);
    }
    void add(const Contour& c) {
        for (const Point& p : c.points()) {
            add(&p.x, sizeof p.x);
            add(&p.y, sizeof p.y);
        }
    }
    std::uint64_t value() const { return h_; }
    std::string hex() const {
        std::ostringstream s;
        s << std::hex << std::setw(16) << std::setfill('0') << h_;
        return s.str();
    }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

/// Writes to a sibling temp file, then renames over `path`.
inline void atomic_write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

struct BenchOptions {
    int jobs = 1;
    std::size_t dt_budget_bytes = std::size_t{1536} << 20;  // resident distance transforms
    std::string cache_dir;  // empty: no caching
    bool resume = false;
    std::function<void(const std::string&)> log;  // progress and warnings
};

/// Preprocessed shape, or the reason it could not be preprocessed.
struct PreparedShape {
    std::optional<ShapeBundle> bundle;
    std::string error;
};

namespace detail {

inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) {
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline std::string shape_key(const Contour& c, const CostParams& p) {
    Fnv1a h;
    h.add(c);
    h.add(format_params(p));
    return h.hex();
}

}  // namespace detail

/// Resample + break-points + catalogue, without distance transforms. With a
/// cache directory the break-points are stored as a sidecar keyed by content
/// and parameters.
inline PreparedShape prepare_shape(const Contour& raw, const CostParams& p, const std::string& cache_dir = {}) {
    PreparedShape out;
    try {
        Contour c = resample(raw, static_cast<std::size_t>(p.sample_count));
        std::vector<BreakPoint> bps;
        fs::path sidecar;
        if (!cache_dir.empty()) {
            sidecar = fs::path(cache_dir) / ("bp-" + detail::shape_key(raw, p) + ".txt");
            std::ifstream in(sidecar);
            if (in) bps = read_break_points(in);
        }
        if (bps.empty()) {
            bps = detect_break_points(c, p);
            if (!sidecar.empty()) {
                std::ostringstream s;
                write_break_points(s, bps);
                atomic_write(sidecar, s.str());
            }
        }
        out.bundle = ShapeBundle::build(std::move(c), std::move(bps), p, false);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

/// Match costs for a set of (row, col) pairs. Distance transforms are
/// created on demand and kept within a byte budget: rows are processed in
/// tiles that stay resident while columns stream past.
class PairEngine {
public:
    using Pair = std::pair<std::size_t, std::size_t>;
    using Sink = std::function<void(std::size_t, std::size_t, const MatchResult&)>;

    PairEngine(std::vector<ShapeBundle*> rows, std::vector<ShapeBundle*> cols, const CostParams& p,
               const BenchOptions& opt)
        : rows_(std::move(rows)), cols_(std::move(cols)), p_(p), opt_(opt) {}

    void run(std::vector<Pair> pairs, const Sink& sink) {
        std::sort(pairs.begin(), pairs.end());
        std::size_t per_shape = 1;
        for (auto* b : rows_)
            if (b) per_shape = std::max(per_shape, b->expected_transform_bytes());
        for (auto* b : cols_)
            if (b) per_shape = std::max(per_shape, b->expected_transform_bytes());
        // Half the budget for the resident row tile, leaving room for columns in flight.
        const std::size_t tile = std::max<std::size_t>(1, opt_.dt_budget_bytes / per_shape / 2);
        const std::size_t col_batch = std::max<std::size_t>(1, opt_.dt_budget_bytes / per_shape / 2);

        std::size_t k = 0;
        while (k < pairs.size()) {
            std::set<std::size_t> tile_rows;
            std::size_t end = k;
            while (end < pairs.size() && (tile_rows.count(pairs[end].first) || tile_rows.size() < tile)) {
                tile_rows.insert(pairs[end].first);
                ++end;
            }
            std::map<std::size_t, std::vector<std::size_t>> by_col;
            for (std::size_t q = k; q < end; ++q) by_col[pairs[q].second].push_back(pairs[q].first);

            std::vector<ShapeBundle*> resident;
            for (std::size_t r : tile_rows) resident.push_back(rows_[r]);
            ensure(resident);

            std::vector<std::size_t> col_ids;
            for (const auto& [c, _] : by_col) col_ids.push_back(c);
            for (std::size_t c0 = 0; c0 < col_ids.size(); c0 += col_batch) {
                const std::size_t c1 = std::min(col_ids.size(), c0 + col_batch);
                std::vector<ShapeBundle*> batch;
                for (std::size_t c = c0; c < c1; ++c) batch.push_back(cols_[col_ids[c]]);
                ensure(batch);
                std::vector<Pair> work;
                for (std::size_t c = c0; c < c1; ++c)
                    for (std::size_t r : by_col[col_ids[c]]) work.push_back({r, col_ids[c]});
                std::mutex sink_mutex;
                detail::parallel_for(work.size(), opt_.jobs, [&](std::size_t w) {
                    const auto [r, c] = work[w];
                    const MatchResult res = match(*rows_[r], *cols_[c], p_);
                    std::lock_guard lock(sink_mutex);
                    sink(r, c, res);
                });
                for (auto* b : batch)
                    if (std::find(resident.begin(), resident.end(), b) == resident.end()) b->release_transforms();
            }
            for (auto* b : resident) b->release_transforms();
            k = end;
        }
    }

private:
    void ensure(const std::vector<ShapeBundle*>& shapes) {
        std::vector<ShapeBundle*> todo;
        for (auto* b : shapes)
            if (!b->has_transforms()) todo.push_back(b);
        detail::parallel_for(todo.size(), opt_.jobs, [&](std::size_t k) { todo[k]->compute_transforms(); });
    }

    std::vector<ShapeBundle*> rows_, cols_;
    CostParams p_;
    BenchOptions opt_;
};

namespace detail {

inline std::string matrix_key(const std::vector<std::string>& rids, const std::vector<Contour>& rows,
                              const std::vector<std::string>& cids, const std::vector<Contour>& cols,
                              bool symmetric, const CostParams& p) {
    Fnv1a h;
    h.add(symmetric ? "sym" : "rect");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        h.add(rids[k]);
        h.add(rows[k]);
    }
    for (std::size_t k = 0; k < cols.size(); ++k) {
        h.add(cids[k]);
        h.add(cols[k]);
    }
    h.add(format_params(p));
    return h.hex();
}

/// Resume file: one "i j cost" line per finished pair.
inline std::map<std::pair<std::size_t, std::size_t>, double> read_pair_log(const fs::path& path) {
    std::map<std::pair<std::size_t, std::size_t>, double> done;
    std::ifstream in(path);
    std::size_t i, j;
    std::string v;
    while (in >> i >> j >> v) done[{i, j}] = std::stod(v);
    return done;
}

inline std::string format_pair_log(const std::map<std::pair<std::size_t, std::size_t>, double>& done) {
    std::ostringstream s;
    s << std::setprecision(17);
    for (const auto& [ij, v] : done) s << ij.first << ' ' << ij.second << ' ' << v << '\n';
    return s.str();
}

}  // namespace detail

/// Shared driver for square and rectangular matrices. `wanted(i, j)` picks
/// the pairs to match; the rest stay NaN unless filled by the caller.
inline DistanceMatrix compute_matrix(const std::vector<std::string>& rids, const std::vector<std::string>& rlabels,
                                     const std::vector<Contour>& rows, const std::vector<std::string>& cids,
                                     const std::vector<std::string>& clabels, const std::vector<Contour>& cols,
                                     bool symmetric, const CostParams& p, const BenchOptions& opt) {
    auto log = [&](const std::string& s) {
        if (opt.log) opt.log(s);
    };
    DistanceMatrix dm = DistanceMatrix::rect(rids, rlabels, cids, clabels);

    fs::path pair_log;
    std::map<std::pair<std::size_t, std::size_t>, double> done;
    if (!opt.cache_dir.empty()) {
        pair_log = fs::path(opt.cache_dir) /
                   ("pairs-" + detail::matrix_key(rids, rows, cids, cols, symmetric, p) + ".txt");
        if (opt.resume) {
            done = detail::read_pair_log(pair_log);
            if (!done.empty()) log("resumed " + std::to_string(done.size()) + " pairs from cache");
        }
    }

    std::vector<PreparedShape> rprep(rows.size()), cprep;
    std::vector<std::pair<std::size_t, std::size_t>> pending;
    auto needs = [&](std::size_t i, std::size_t j) { return !done.count({i, j}); };
    std::vector<bool> row_needed(rows.size(), false), col_needed(cols.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = symmetric ? i : 0; j < cols.size(); ++j)
            if (needs(i, j)) {
                row_needed[i] = true;
                col_needed[j] = true;
            }

    detail::parallel_for(rows.size(), opt.jobs, [&](std::size_t i) {
        if (row_needed[i] || symmetric) rprep[i] = prepare_shape(rows[i], p, opt.cache_dir);
    });
    if (!symmetric) {
        cprep.resize(cols.size());
        detail::parallel_for(cols.size(), opt.jobs, [&](std::size_t j) {
            if (col_needed[j]) cprep[j] = prepare_shape(cols[j], p, opt.cache_dir);
        });
    }
    auto& cp = symmetric ? rprep : cprep;
    auto ok_row = [&](std::size_t i) { return rprep[i].bundle.has_value(); };
    auto ok_col = [&](std::size_t j) { return cp[j].bundle.has_value(); };
    for (std::size_t i = 0; i < rows.size(); ++i)
        if ((row_needed[i] || symmetric) && !ok_row(i)) {
            dm.failed_rows[i] = true;
            log("warning: " + rids[i] + " excluded: " + rprep[i].error);
        }
    if (!symmetric)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (col_needed[j] && !ok_col(j)) log("warning: gallery shape " + cids[j] + " failed: " + cp[j].error);

    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = symmetric ? i : 0; j < cols.size(); ++j) {
            if (!needs(i, j)) continue;
            if (ok_row(i) && ok_col(j)) pending.push_back({i, j});
            else done[{i, j}] = std::numeric_limits<double>::infinity();
        }

    if (!pending.empty()) {
        std::vector<ShapeBundle*> rb(rows.size(), nullptr), cb(cols.size(), nullptr);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (ok_row(i)) rb[i] = &*rprep[i].bundle;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (ok_col(j)) cb[j] = &*cp[j].bundle;
        log("matching " + std::to_string(pending.size()) + " pairs");
        PairEngine engine(rb, cb, p, opt);
        std::size_t since_flush = 0;
        engine.run(pending, [&](std::size_t i, std::size_t j, const MatchResult& r) {
            done[{i, j}] = r.cost;
            if (!pair_log.empty() && ++since_flush >= 64) {
                atomic_write(pair_log, detail::format_pair_log(done));
                since_flush = 0;
            }
        });
    }
    if (!pair_log.empty()) atomic_write(pair_log, detail::format_pair_log(done));

    for (const auto& [ij, v] : done) {
        if (ij.first >= dm.rows() || ij.second >= dm.cols()) continue;
        dm.at(ij.first, ij.second) = v;
        // Matching is not exactly symmetric (only a's cut is searched), so
        // the upper triangle is mirrored.
        if (symmetric) dm.at(ij.second, ij.first) = v;
    }
    for (std::size_t i = 0; i < dm.rows(); ++i)
        if (dm.failed_rows[i])
            for (std::size_t j = 0; j < dm.cols(); ++j) dm.at(i, j) = std::numeric_limits<double>::infinity();
    return dm;
}

/// All-pairs costs of a dataset against itself, self-distances included.
inline DistanceMatrix distance_matrix(const Dataset& d, const CostParams& p, const BenchOptions& opt = {}) {
    std::vector<Contour> cs;
    for (const auto& e : d.entries) cs.push_back(e.contour);
    return compute_matrix(d.ids(), d.labels(), cs, d.ids(), d.labels(), cs, true, p, opt);
}

/// Queries against a gallery.
inline DistanceMatrix cross_matrix(const Dataset& queries, const Dataset& gallery, const CostParams& p,
                                   const BenchOptions& opt = {}) {
    std::vector<Contour> qs, gs;
    for (const auto& e : queries.entries) qs.push_back(e.contour);
    for (const auto& e : gallery.entries) gs.push_back(e.contour);
    return compute_matrix(queries.ids(), queries.labels(), qs, gallery.ids(), gallery.labels(), gs, false, p, opt);
}

namespace detail {

/// Column indices of row i by ascending cost (ties by index), skipping `excluded`.
inline std::vector<std::size_t> ranking(const DistanceMatrix& dm, std::size_t i, std::optional<std::size_t> excluded) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < dm.cols(); ++j)
        if (!excluded || j != *excluded) idx.push_back(j);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double va = dm.at(i, a), vb = dm.at(i, b);
        if (std::isnan(va)) return false;
        if (std::isnan(vb)) return true;
        return va < vb;
    });
    return idx;
}

}  // namespace detail

/// Percentage of same-class shapes among each query's `top` nearest
/// (query included), normalised by the class size. Square matrices only.
inline double bullseye_score(const DistanceMatrix& dm, std::size_t top = 40) {
    std::map<std::string, std::size_t> class_size;
    for (const auto& l : dm.col_labels) ++class_size[l];
    double hits = 0.0, possible = 0.0;
    for (std::size_t i = 0; i < dm.rows(); ++i) {
        if (dm.failed_rows[i]) continue;
        const auto rank = detail::ranking(dm, i, std::nullopt);
        const std::size_t n = std::min(top, rank.size());
        std::size_t h = 0;
        for (std::size_t k = 0; k < n; ++k) h += dm.col_labels[rank[k]] == dm.row_labels[i];
        hits += static_cast<double>(h);
        possible += static_cast<double>(class_size[dm.row_labels[i]]);
    }
    return possible > 0.0 ? 100.0 * hits / possible : 0.0;
}

/// Leave-one-out top-k recognition rate in percent. `exclude[i]` is the
/// column hidden from query i (its own entry); merged labels "A+B" count a
/// hit on either class.
inline double topk_recognition(const DistanceMatrix& dm, std::size_t k,
                               const std::vector<std::optional<std::size_t>>& exclude) {
    std::size_t correct = 0, total = 0;
    for (std::size_t i = 0; i < dm.rows(); ++i) {
        if (dm.failed_rows[i]) continue;
        const auto want = constituent_labels(dm.row_labels[i]);
        const auto rank = detail::ranking(dm, i, exclude.empty() ? std::nullopt : exclude[i]);
        bool hit = false;
        for (std::size_t r = 0; r < std::min(k, rank.size()) && !hit; ++r)
            hit = std::find(want.begin(), want.end(), dm.col_labels[rank[r]]) != want.end();
        correct += hit;
        ++total;
    }
    return total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

/// Square-matrix convenience: each query's own column is excluded.
inline double topk_recognition(const DistanceMatrix& dm, std::size_t k) {
    std::vector<std::optional<std::size_t>> ex(dm.rows());
    for (std::size_t i = 0; i < dm.rows(); ++i) ex[i] = i;
    return topk_recognition(dm, k, ex);
}

struct RetrievalReport {
    std::size_t shapes = 0;
    std::size_t classes = 0;
    std::size_t failed = 0;
    std::size_t bullseye_top = 40;
    double bullseye = 0.0;
    double top1 = 0.0;
    double max_asymmetry = 0.0;
};

inline RetrievalReport summarize(const DistanceMatrix& dm, std::size_t bullseye_top) {
    RetrievalReport r;
    r.shapes = dm.rows();
    r.classes = std::set<std::string>(dm.row_labels.begin(), dm.row_labels.end()).size();
    r.failed = static_cast<std::size_t>(std::count(dm.failed_rows.begin(), dm.failed_rows.end(), true));
    r.bullseye_top = bullseye_top;
    r.bullseye = bullseye_score(dm, bullseye_top);
    r.top1 = topk_recognition(dm, 1);
    for (std::size_t i = 0; i < dm.rows(); ++i)
        for (std::size_t j = 0; j < dm.cols(); ++j)
            if (std::isfinite(dm.at(i, j)) && std::isfinite(dm.at(j, i)))
                r.max_asymmetry = std::max(r.max_asymmetry, std::abs(dm.at(i, j) - dm.at(j, i)));
    return r;
}

inline void write_report(std::ostream& out, const RetrievalReport& r) {
    out << std::setprecision(6);
    out << "shapes=" << r.shapes << '\n'
        << "classes=" << r.classes << '\n'
        << "failed=" << r.failed << '\n'
        << "bullseye_top=" << r.bullseye_top << '\n'
        << "bullseye=" << r.bullseye << '\n'
        << "top1=" << r.top1 << '\n'
        << "max_asymmetry=" << r.max_asymmetry << '\n';
}

}  // namespace gsmatch
