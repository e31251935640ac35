#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace anisofem {

/// Compressed sparse row matrix. Column indices are strictly increasing
/// inside each row once the matrix is finalized.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx,
              std::vector<double> values);

    static CsrMatrix identity(int n);

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }
    [[nodiscard]] std::size_t nnz() const { return values_.size(); }
    [[nodiscard]] const std::vector<int>& row_ptr() const { return row_ptr_; }
    [[nodiscard]] const std::vector<int>& col_idx() const { return col_idx_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] std::vector<double>& values() { return values_; }

    /// Stored value at (i, j) or zero.
    [[nodiscard]] double at(int i, int j) const;
    /// Index into values() of entry (i, j), or -1 if not stored.
    [[nodiscard]] std::ptrdiff_t find(int i, int j) const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
    void multiply_transposed(std::span<const double> x, std::span<double> y) const;

    /// Maximum absolute column sum.
    [[nodiscard]] double norm1() const;
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] CsrMatrix transposed() const;

    /// Drop entries with magnitude below 1e-300.
    void drop_zeros();

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

/// Coordinate-format accumulator. Duplicates are summed in insertion order.
class TripletList {
public:
    TripletList(int rows, int cols) : rows_(rows), cols_(cols) {}

    void add(int i, int j, double v) { entries_.push_back({i, j, v}); }
    void reserve(std::size_t n) { entries_.reserve(n); }
    [[nodiscard]] CsrMatrix to_csr() const;

private:
    struct Entry {
        int i;
        int j;
        double v;
    };
    int rows_;
    int cols_;
    std::vector<Entry> entries_;
};

/// Writes "i j value" lines, 0-based, 17 significant digits.
void write_coordinate(const CsrMatrix& a, std::ostream& os);

inline constexpr double kPivotTolerance = 1e-14;

/// Sparse LU factorization with threshold row pivoting and a fill-reducing
/// column ordering. solve() applies one step of iterative refinement against
/// the original matrix.
/// What LuFactor does when the smallest pivot is nonzero but below 1e-14 * max|A|.
enum class PivotPolicy {
    Throw,
    /// Keep the factorization and report it through near_singular().
    Flag,
};

class LuFactor {
public:
    /// Throws SingularMatrixError on an exact zero pivot, and on a pivot below
    /// 1e-14 * max|A| unless the policy is Flag.
    explicit LuFactor(const CsrMatrix& a, PivotPolicy policy = PivotPolicy::Throw);
    ~LuFactor();
    LuFactor(LuFactor&&) noexcept;
    LuFactor& operator=(LuFactor&&) noexcept;
    LuFactor(const LuFactor&) = delete;
    LuFactor& operator=(const LuFactor&) = delete;

    [[nodiscard]] int size() const;
    [[nodiscard]] const CsrMatrix& matrix() const;

    /// A x = b with one refinement step.
    [[nodiscard]] std::vector<double> solve(std::span<const double> b) const;
    /// A^T x = b with one refinement step.
    [[nodiscard]] std::vector<double> solve_transposed(std::span<const double> b) const;

    /// Single triangular-solve pass without refinement.
    void raw_solve(std::span<const double> b, std::span<double> x, bool transposed) const;

    /// Smallest / largest pivot magnitude.
    [[nodiscard]] double min_pivot() const;
    [[nodiscard]] double max_pivot() const;
    /// True when the pivot test fired under PivotPolicy::Flag.
    [[nodiscard]] bool near_singular() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<double> lu_solve(const LuFactor& factor, std::span<const double> b);

/// 1-norm condition number estimate ||A||_1 * est(||A^-1||_1). The inverse norm
/// comes from Hager's gradient ascent with Higham's alternating-sign vector as
/// a second start; the result is a lower bound on the exact value.
double cond1_estimate(const CsrMatrix& a, const LuFactor& factor);

/// Estimate of ||A^-1||_1 alone.
double inverse_norm1_estimate(const LuFactor& factor);

}  // namespace anisofem
