// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "chromawheel/knowledge.hpp"

namespace cw {
namespace {

// Neighbour offsets in the order P2..P9 of the Zhang-Suen formulation:
// N, NE, E, SE, S, SW, W, NW (y grows downward in the grid).
constexpr std::array<int, 8> kDx = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kDy = {-1, -1, 0, 1, 1, 1, 0, -1};

std::array<int, 8> ring(const BinaryGrid& g, int x, int y) {
    std::array<int, 8> p{};
    for (int k = 0; k < 8; ++k) p[k] = g.get(x + kDx[k], y + kDy[k]) ? 1 : 0;
    return p;
}

int neighbour_count(const std::array<int, 8>& p) {
    int n = 0;
    for (int v : p) n += v;
    return n;
}

// Number of 0 -> 1 transitions walking once around the ring.
int transitions(const std::array<int, 8>& p) {
    int a = 0;
    for (int k = 0; k < 8; ++k) a += (p[k] == 0 && p[(k + 1) % 8] == 1) ? 1 : 0;
    return a;
}

// Yokoi connectivity number for 8-connectivity. A set pixel whose value is
// 1 can be removed without changing the topology of the foreground.
int connectivity8(const std::array<int, 8>& p) {
    // Ring order starting at E, counterclockwise: E, NE, N, NW, W, SW, S, SE.
    const std::array<int, 8> q = {p[2], p[1], p[0], p[7], p[6], p[5], p[4], p[3]};
    int n = 0;
    for (int k = 0; k < 8; k += 2) {
        const int a = 1 - q[k];
        const int b = 1 - q[(k + 1) % 8];
        const int c = 1 - q[(k + 2) % 8];
        n += a - a * b * c;
    }
    return n;
}

bool zhang_suen_pass(BinaryGrid& g, bool first) {
    std::vector<std::size_t> doomed;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            if (!g.get(x, y)) continue;
            const auto p = ring(g, x, y);
            const int b = neighbour_count(p);
            if (b < 2 || b > 6 || transitions(p) != 1) continue;
            // p[0]=N, p[2]=E, p[4]=S, p[6]=W
            const bool cond = first ? (p[0] * p[2] * p[4] == 0 && p[2] * p[4] * p[6] == 0)
                                    : (p[0] * p[2] * p[6] == 0 && p[0] * p[4] * p[6] == 0);
            if (cond) doomed.push_back(static_cast<std::size_t>(y) * g.width + x);
        }
    }
    for (auto i : doomed) g.cells[i] = 0;
    return !doomed.empty();
}

// Zhang-Suen leaves L-shaped corners on diagonal runs. Those corner pixels
// have two orthogonal neighbours that already touch diagonally, so they are
// removed when doing so keeps the skeleton connected.
void remove_staircases(BinaryGrid& g) {
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            if (!g.get(x, y)) continue;
            const auto p = ring(g, x, y);
            if (neighbour_count(p) < 2) continue;
            const bool corner = (p[0] && p[2]) || (p[2] && p[4]) || (p[4] && p[6]) || (p[6] && p[0]);
            if (corner && connectivity8(p) == 1) g.set(x, y, 0);
        }
    }
}

// True when the set pixels of the ring form a single 8-connected group
// without passing through the centre, so removing the centre cannot split
// the foreground.
bool ring_stays_connected(const std::array<int, 8>& p) {
    std::array<int, 8> seen{};
    int start = -1;
    int set = 0;
    for (int k = 0; k < 8; ++k) {
        if (p[k]) {
            ++set;
            if (start < 0) start = k;
        }
    }
    if (set == 0) return false;
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int k = stack.back();
        stack.pop_back();
        for (int j = 0; j < 8; ++j) {
            if (!p[j] || seen[j]) continue;
            if (std::abs(kDx[j] - kDx[k]) <= 1 && std::abs(kDy[j] - kDy[k]) <= 1) {
                seen[j] = 1;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    return reached == set;
}

// Where rays converge the histogram becomes a fine mesh, and a pixel of a
// solid 2x2 block there can separate two background holes. Topology
// preserving thinning keeps such blocks, so this pass removes one pixel of
// each block whose neighbours stay connected, trading hole topology for a
// skeleton that is one pixel wide everywhere.
void break_blocks(BinaryGrid& g) {
    constexpr std::array<std::array<int, 2>, 4> kCorner = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y + 1 < g.height; ++y) {
            for (int x = 0; x + 1 < g.width; ++x) {
                if (!(g.get(x, y) && g.get(x + 1, y) && g.get(x, y + 1) && g.get(x + 1, y + 1))) continue;
                for (const auto& [dx, dy] : kCorner) {
                    if (ring_stays_connected(ring(g, x + dx, y + dy))) {
                        g.set(x + dx, y + dy, 0);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
}

}  // namespace

std::size_t BinaryGrid::count() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; }));
}

BinaryGrid thin(BinaryGrid grid) {
    while (true) {
        const bool a = zhang_suen_pass(grid, true);
        const bool b = zhang_suen_pass(grid, false);
        if (!a && !b) break;
    }
    remove_staircases(grid);
    break_blocks(grid);
    return grid;
}

SkeletonGraph analyse_skeleton(BinaryGrid skeleton) {
    SkeletonGraph g;
    const int w = skeleton.width;
    const int h = skeleton.height;
    std::vector<int> degree(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!skeleton.get(x, y)) continue;
            const int n = neighbour_count(ring(skeleton, x, y));
            degree[static_cast<std::size_t>(y) * w + x] = n;
            if (n == 1) g.endpoints.push_back({x, y});
        }
    }

    // A junction in an 8-connected skeleton is usually a small clump of
    // pixels with three or more neighbours. Each clump counts as one branch
    // point, represented by its highest-degree pixel (first in raster order).
    std::vector<std::uint8_t> visited(degree.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (degree[i] < 3 || visited[i]) continue;
            GridPoint best{x, y};
            int best_degree = degree[i];
            std::vector<GridPoint> stack{{x, y}};
            visited[i] = 1;
            while (!stack.empty()) {
                const GridPoint c = stack.back();
                stack.pop_back();
                const std::size_t ci = static_cast<std::size_t>(c.y) * w + c.x;
                if (degree[ci] > best_degree ||
                    (degree[ci] == best_degree && (c.y < best.y || (c.y == best.y && c.x < best.x)))) {
                    best = c;
                    best_degree = degree[ci];
                }
                for (int k = 0; k < 8; ++k) {
                    const int nx = c.x + kDx[k];
                    const int ny = c.y + kDy[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
                    if (degree[ni] >= 3 && !visited[ni]) {
                        visited[ni] = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
            g.branch_points.push_back(best);
        }
    }
    g.skeleton = std::move(skeleton);
    return g;
}

SkeletonGraph skeletonize(const AbHistogram& h) {
    const int dim = h.dim();
    BinaryGrid grid(dim, dim);
    bool chromatic = false;
    for (int row = 0; row < dim; ++row) {
        for (int col = 0; col < dim; ++col) {
            if (h.at(col, row) == 0) continue;
            grid.set(col, row, 1);
            // The gray axis lands in the centre bin and its direct neighbours.
            if (std::hypot(h.a_of(col), h.b_of(row)) > 1.5 * h.bin_size) chromatic = true;
        }
    }
    if (!chromatic) throw KnowledgeError("no chromatic content");
    return analyse_skeleton(thin(std::move(grid)));
}

}  // namespace cw
