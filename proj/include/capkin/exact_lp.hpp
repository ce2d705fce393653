#ifndef CAPKIN_EXACT_LP_HPP
#define CAPKIN_EXACT_LP_HPP

#include "capkin/rational.hpp"

#include <optional>
#include <vector>

namespace capkin::detail {

struct LpSolution {
    Rational objective;
    RatVec x;
};

/// Dense two-phase simplex over exact rationals with Bland's rule.
///
/// Solves  max cᵀx  s.t.  A x = b,  x ≥ 0.
/// Returns nullopt when infeasible; throws on an unbounded objective
/// (callers here always pose bounded problems). Bland's rule makes the
/// iteration finite; rational arithmetic makes every sign decision exact.
class SimplexMax {
public:
    SimplexMax(RatMat a, RatVec b, RatVec c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

    std::optional<LpSolution> solve() {
        rows_ = static_cast<int>(a_.size());
        cols_ = static_cast<int>(c_.size());
        for (int i = 0; i < rows_; ++i)
            if (b_[i] < 0) {
                b_[i] = -b_[i];
                for (auto& v : a_[i])
                    v = -v;
            }
        build_phase1();
        run(/*allowed_cols=*/cols_ + rows_);
        if (objval_ != 0)
            return std::nullopt; // some artificial stuck at a positive level
        drop_artificials();
        load_objective(c_);
        run(/*allowed_cols=*/cols_);
        LpSolution s;
        s.objective = objval_;
        s.x.assign(cols_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < cols_)
                s.x[basis_[i]] = tab_[i].back();
        return s;
    }

private:
    RatMat a_;
    RatVec b_, c_;
    int rows_ = 0, cols_ = 0;
    RatMat tab_;            // rows_ x (width_+1), last column is the rhs
    int width_ = 0;         // columns currently in the tableau
    std::vector<int> basis_;
    RatVec obj_;            // reduced costs, length width_
    Rational objval_ = 0;

    void build_phase1() {
        width_ = cols_ + rows_;
        tab_.assign(rows_, RatVec(width_ + 1, Rational(0)));
        basis_.resize(rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j)
                tab_[i][j] = a_[i][j];
            tab_[i][cols_ + i] = 1;
            tab_[i][width_] = b_[i];
            basis_[i] = cols_ + i;
        }
        // phase-1 objective: max −Σ artificials. Reduced cost of a structural
        // column is the sum of its constraint column; artificials start at 0.
        obj_.assign(width_, Rational(0));
        objval_ = 0;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j)
                obj_[j] += tab_[i][j];
            objval_ -= tab_[i][width_];
        }
    }

    void load_objective(const RatVec& cost) {
        obj_.assign(width_, Rational(0));
        for (int j = 0; j < width_ && j < cols_; ++j)
            obj_[j] = cost[j];
        objval_ = 0;
        for (int i = 0; i < rows_; ++i) {
            const int bj = basis_[i];
            const Rational cb = bj < cols_ ? cost[bj] : Rational(0);
            if (cb == 0)
                continue;
            objval_ += cb * tab_[i][width_];
            for (int j = 0; j < width_; ++j)
                obj_[j] -= cb * tab_[i][j];
        }
    }

    void pivot(int row, int col) {
        const Rational inv = Rational(1) / tab_[row][col];
        for (auto& v : tab_[row])
            v *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == row || tab_[i][col] == 0)
                continue;
            const Rational f = tab_[i][col];
            for (int j = 0; j <= width_; ++j)
                tab_[i][j] -= f * tab_[row][j];
        }
        if (obj_[col] != 0) {
            const Rational f = obj_[col];
            for (int j = 0; j < width_; ++j)
                obj_[j] -= f * tab_[row][j];
            objval_ += f * tab_[row][width_];
        }
        basis_[row] = col;
    }

    void run(int allowed_cols) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < allowed_cols; ++j)
                if (obj_[j] > 0) {
                    enter = j;
                    break;
                }
            if (enter < 0)
                return;
            int leave = -1;
            Rational best;
            for (int i = 0; i < rows_; ++i) {
                if (tab_[i][enter] <= 0)
                    continue;
                const Rational ratio = tab_[i][width_] / tab_[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                throw std::logic_error("exact LP: unbounded objective");
            pivot(leave, enter);
        }
    }

    // Pivot zero-level artificials onto structural columns; rows that cannot
    // be cleared are redundant equalities and get deleted.
    void drop_artificials() {
        for (int i = 0; i < rows_;) {
            if (basis_[i] < cols_) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < cols_; ++j)
                if (tab_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(i, col);
                ++i;
            } else {
                tab_.erase(tab_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --rows_;
            }
        }
        for (auto& row : tab_) {
            row.erase(row.begin() + cols_, row.begin() + width_);
        }
        width_ = cols_;
        obj_.resize(width_);
    }
};

inline std::optional<LpSolution> simplex_max(RatMat a, RatVec b, RatVec c) {
    return SimplexMax(std::move(a), std::move(b), std::move(c)).solve();
}

} // namespace capkin::detail

#endif
