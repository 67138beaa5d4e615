#pragma once

// Shortest-augmenting-path Hungarian method with row/column potentials,
// O(n^3) scalar operations.  Works for any ordered field; with Rational the
// result and the potentials are exact.

#include "dsm/matrix.hpp"

#include <optional>
#include <vector>

namespace dsm::detail {

template <class T>
struct AssignmentSolution {
    std::vector<std::size_t> row_to_col;
    // Dual potentials: row_pot[i] + col_pot[j] <= cost(i,j) for all (i,j),
    // with equality on every assigned pair.
    std::vector<T> row_pot;
    std::vector<T> col_pot;
};

/// Minimum-cost perfect assignment for a square cost matrix.
template <class T>
AssignmentSolution<T> min_cost_assignment(const Matrix<T>& cost) {
    const std::size_t n = cost.order();
    // 1-based internally; index 0 is the virtual root column.
    std::vector<T> u(n + 1, T(0)), v(n + 1, T(0));
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<std::optional<T>> minv(n + 1);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            std::optional<T> delta;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                T cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (!minv[j] || cur < *minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (!delta || *minv[j] < *delta) {
                    delta = *minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += *delta;
                    v[j] -= *delta;
                } else {
                    *minv[j] -= *delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    AssignmentSolution<T> out;
    out.row_to_col.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) out.row_to_col[match[j] - 1] = j - 1;
    out.row_pot.assign(u.begin() + 1, u.end());
    out.col_pot.assign(v.begin() + 1, v.end());
    return out;
}

/// Lexicographically smallest perfect matching of a bipartite graph (rows to
/// columns) given one perfect matching of it.  Rows are fixed in order; for
/// each row the smallest admissible column is found with one reverse search
/// for an alternating cycle, so the whole pass is O(n * edges).
inline std::vector<std::size_t> lex_min_perfect_matching(const std::vector<std::vector<bool>>& edge,
                                                         std::vector<std::size_t> row_to_col) {
    const std::size_t n = row_to_col.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> col_to_row(n);
    for (std::size_t i = 0; i < n; ++i) col_to_row[row_to_col[i]] = i;
    std::vector<bool> col_fixed(n, false);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t home = row_to_col[i];
        // Rows r > i from which an alternating path reaches `home`:
        // r -(edge)-> c, then c -(matched)-> col_to_row[c], ... ending at home.
        std::vector<std::size_t> next_col(n, none);
        std::vector<bool> col_good(n, false);
        std::vector<std::size_t> frontier{home};
        col_good[home] = true;
        while (!frontier.empty()) {
            std::vector<std::size_t> grown;
            for (std::size_t c : frontier) {
                for (std::size_t r = i + 1; r < n; ++r) {
                    if (next_col[r] != none || !edge[r][c] || row_to_col[r] == c) continue;
                    next_col[r] = c;
                    const std::size_t mc = row_to_col[r];
                    if (!col_good[mc]) {
                        col_good[mc] = true;
                        grown.push_back(mc);
                    }
                }
            }
            frontier = std::move(grown);
        }

        std::size_t pick = home;
        for (std::size_t j = 0; j < home; ++j) {
            if (col_fixed[j] || !edge[i][j]) continue;
            if (next_col[col_to_row[j]] != none) {
                pick = j;
                break;
            }
        }
        if (pick != home) {
            // Rotate along i -> pick -> ... -> home.
            std::size_t r = col_to_row[pick];
            row_to_col[i] = pick;
            col_to_row[pick] = i;
            for (;;) {
                const std::size_t c = next_col[r];
                const std::size_t prev = col_to_row[c];
                row_to_col[r] = c;
                col_to_row[c] = r;
                if (c == home) break;
                r = prev;
            }
        }
        col_fixed[row_to_col[i]] = true;
    }
    return row_to_col;
}

} // namespace dsm::detail
