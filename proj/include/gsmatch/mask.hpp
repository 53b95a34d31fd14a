#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsmatch/geometry.hpp"

namespace gsmatch {

/// Binary raster, row-major, 1 = foreground.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells;

    Mask() = default;
    Mask(int w, int h) : width(w), height(h), cells(static_cast<std::size_t>(w) * h, 0) {}

    bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
    std::uint8_t operator()(int x, int y) const { return inside(x, y) ? cells[idx(x, y)] : 0; }
    void set(int x, int y, std::uint8_t v = 1) {
        if (inside(x, y)) cells[idx(x, y)] = v;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto c : cells) n += c != 0;
        return n;
    }
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

namespace detail {

inline void skip_pgm_space(std::istream& in) {
    for (;;) {
        const int ch = in.peek();
        if (ch == '#') {
            std::string dummy;
            std::getline(in, dummy);
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            in.get();
        } else {
            return;
        }
    }
}

inline int read_pgm_int(std::istream& in) {
    skip_pgm_space(in);
    int v = -1;
    if (!(in >> v) || v < 0) throw std::runtime_error("malformed graymap header");
    return v;
}

}  // namespace detail

/// Reads a plain (P2) or raw (P5) graymap. Foreground is value >= maxval / 2.
inline Mask read_pgm(std::istream& in) {
    std::string magic(2, '\0');
    if (!in.read(magic.data(), 2) || (magic != "P2" && magic != "P5"))
        throw std::runtime_error("not a portable graymap");
    const int w = detail::read_pgm_int(in);
    const int h = detail::read_pgm_int(in);
    const int maxval = detail::read_pgm_int(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) throw std::runtime_error("malformed graymap header");
    Mask m(w, h);
    const int threshold = (maxval + 1) / 2;
    if (magic == "P2") {
        for (std::size_t i = 0; i < m.cells.size(); ++i) {
            int v = 0;
            detail::skip_pgm_space(in);
            if (!(in >> v)) throw std::runtime_error("truncated graymap");
            m.cells[i] = v >= threshold;
        }
    } else {
        in.get();  // single whitespace after maxval
        const int bytes = maxval < 256 ? 1 : 2;
        std::vector<unsigned char> raw(m.cells.size() * bytes);
        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
            throw std::runtime_error("truncated graymap");
        for (std::size_t i = 0; i < m.cells.size(); ++i) {
            const int v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
            m.cells[i] = v >= threshold;
        }
    }
    return m;
}

inline void write_pgm(std::ostream& out, const Mask& m, bool raw = true) {
    out << (raw ? "P5" : "P2") << '\n' << m.width << ' ' << m.height << "\n255\n";
    if (raw) {
        for (auto c : m.cells) out.put(static_cast<char>(c ? 255 : 0));
    } else {
        for (int y = 0; y < m.height; ++y) {
            for (int x = 0; x < m.width; ++x) out << (m(x, y) ? 255 : 0) << (x + 1 < m.width ? " " : "");
            out << '\n';
        }
    }
}

/// Labels 8-connected foreground components; returns the largest one
/// (ties resolved by first appearance in raster order).
inline Mask largest_component(const Mask& m) {
    std::vector<int> label(m.cells.size(), -1);
    int best_label = -1;
    std::size_t best_size = 0;
    int next = 0;
    std::queue<std::pair<int, int>> q;
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m(x, y) || label[m.idx(x, y)] >= 0) continue;
            std::size_t size = 0;
            label[m.idx(x, y)] = next;
            q.push({x, y});
            while (!q.empty()) {
                auto [cx, cy] = q.front();
                q.pop();
                ++size;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (m(nx, ny) && label[m.idx(nx, ny)] < 0) {
                            label[m.idx(nx, ny)] = next;
                            q.push({nx, ny});
                        }
                    }
            }
            if (size > best_size) {
                best_size = size;
                best_label = next;
            }
            ++next;
        }
    }
    Mask out(m.width, m.height);
    for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i] = label[i] == best_label && best_label >= 0;
    return out;
}

inline std::size_t component_count(const Mask& m) {
    std::vector<char> seen(m.cells.size(), 0);
    std::size_t comps = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            if (!m(x, y) || seen[m.idx(x, y)]) continue;
            ++comps;
            seen[m.idx(x, y)] = 1;
            stack.push_back({x, y});
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (m(nx, ny) && !seen[m.idx(nx, ny)]) {
                            seen[m.idx(nx, ny)] = 1;
                            stack.push_back({nx, ny});
                        }
                    }
            }
        }
    return comps;
}

/// Moore-neighbour tracing of the outer boundary of the first foreground
/// component in raster order, with Jacob's stopping criterion (stop when the
/// start pixel is about to be left by the same move as the first time).
inline std::vector<std::pair<int, int>> trace_outer_boundary(const Mask& m) {
    // Clockwise in image coordinates (y down), starting west.
    static constexpr std::array<std::pair<int, int>, 8> kDirs = {
        {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};
    int sx = -1, sy = -1;
    for (int y = 0; y < m.height && sx < 0; ++y)
        for (int x = 0; x < m.width; ++x)
            if (m(x, y)) {
                sx = x;
                sy = y;
                break;
            }
    if (sx < 0) throw std::runtime_error("empty mask");

    std::vector<std::pair<int, int>> out{{sx, sy}};
    // Raster scan guarantees the west neighbour of the start is background.
    int cx = sx, cy = sy;
    int back = 0;  // direction from the current pixel to its backtrack pixel
    int first_move = -1;
    const std::size_t limit = 4 * m.cells.size() + 8;
    for (std::size_t step = 0; step < limit; ++step) {
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int d = (back + k) % 8;
            if (m(cx + kDirs[d].first, cy + kDirs[d].second)) {
                found = d;
                break;
            }
        }
        if (found < 0) return out;  // isolated pixel
        if (cx == sx && cy == sy) {
            // Jacob's criterion: leaving the start the same way as the first time.
            if (first_move < 0) {
                first_move = found;
            } else if (found == first_move) {
                out.pop_back();
                break;
            }
        }
        const int nx = cx + kDirs[found].first;
        const int ny = cy + kDirs[found].second;
        const int prev = (found + 7) % 8;
        const int bx = cx + kDirs[prev].first - nx;
        const int by = cy + kDirs[prev].second - ny;
        for (int d = 0; d < 8; ++d)
            if (kDirs[d].first == bx && kDirs[d].second == by) back = d;
        cx = nx;
        cy = ny;
        out.push_back({cx, cy});
    }
    return out;
}

}  // namespace gsmatch
