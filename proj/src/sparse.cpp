#include "anisofem/sparse.hpp"

#include <umfpack.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "anisofem/errors.hpp"

namespace anisofem {

CsrMatrix::CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx,
                     std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
    if (row_ptr_.size() != static_cast<std::size_t>(rows_) + 1 ||
        col_idx_.size() != values_.size() ||
        static_cast<std::size_t>(row_ptr_.back()) != values_.size()) {
        throw Error("CsrMatrix: inconsistent array sizes");
    }
}

CsrMatrix CsrMatrix::identity(int n) {
    std::vector<int> ptr(static_cast<std::size_t>(n) + 1);
    std::iota(ptr.begin(), ptr.end(), 0);
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    return {n, n, std::move(ptr), std::move(idx), std::vector<double>(static_cast<std::size_t>(n), 1.0)};
}

std::ptrdiff_t CsrMatrix::find(int i, int j) const {
    const auto begin = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i)];
    const auto end = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i) + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) {
        return -1;
    }
    return it - col_idx_.begin();
}

double CsrMatrix::at(int i, int j) const {
    const auto k = find(i, j);
    return k < 0 ? 0.0 : values_[static_cast<std::size_t>(k)];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (int k = row_ptr_[static_cast<std::size_t>(i)]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
            sum += values_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(i)] = sum;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(rows_));
    multiply(x, y);
    return y;
}

void CsrMatrix::multiply_transposed(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        for (int k = row_ptr_[static_cast<std::size_t>(i)]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
            y[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)])] += values_[static_cast<std::size_t>(k)] * xi;
        }
    }
}

double CsrMatrix::norm1() const {
    std::vector<double> colsum(static_cast<std::size_t>(cols_), 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        colsum[static_cast<std::size_t>(col_idx_[k])] += std::abs(values_[k]);
    }
    return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

CsrMatrix CsrMatrix::transposed() const {
    std::vector<int> ptr(static_cast<std::size_t>(cols_) + 1, 0);
    for (int c : col_idx_) {
        ++ptr[static_cast<std::size_t>(c) + 1];
    }
    std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
    std::vector<int> next(ptr.begin(), ptr.end() - 1);
    std::vector<int> idx(values_.size());
    std::vector<double> val(values_.size());
    for (int i = 0; i < rows_; ++i) {
        for (int k = row_ptr_[static_cast<std::size_t>(i)]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
            const auto c = static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)]);
            const auto dst = static_cast<std::size_t>(next[c]++);
            idx[dst] = i;
            val[dst] = values_[static_cast<std::size_t>(k)];
        }
    }
    return {cols_, rows_, std::move(ptr), std::move(idx), std::move(val)};
}

void CsrMatrix::drop_zeros() {
    std::size_t out = 0;
    std::size_t start = 0;
    for (int i = 0; i < rows_; ++i) {
        const auto end = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i) + 1]);
        for (std::size_t k = start; k < end; ++k) {
            if (std::abs(values_[k]) >= 1e-300) {
                col_idx_[out] = col_idx_[k];
                values_[out] = values_[k];
                ++out;
            }
        }
        start = end;
        row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(out);
    }
    col_idx_.resize(out);
    values_.resize(out);
}

CsrMatrix TripletList::to_csr() const {
    std::vector<std::size_t> order(entries_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        const Entry& ea = entries_[a];
        const Entry& eb = entries_[b];
        return ea.i != eb.i ? ea.i < eb.i : ea.j < eb.j;
    });
    std::vector<int> ptr(static_cast<std::size_t>(rows_) + 1, 0);
    std::vector<int> idx;
    std::vector<double> val;
    idx.reserve(entries_.size());
    val.reserve(entries_.size());
    int last_i = -1;
    int last_j = -1;
    for (std::size_t k : order) {
        const Entry& e = entries_[k];
        if (e.i < 0 || e.i >= rows_ || e.j < 0 || e.j >= cols_) {
            throw Error("TripletList: index out of range");
        }
        if (e.i == last_i && e.j == last_j) {
            val.back() += e.v;
            continue;
        }
        idx.push_back(e.j);
        val.push_back(e.v);
        ++ptr[static_cast<std::size_t>(e.i) + 1];
        last_i = e.i;
        last_j = e.j;
    }
    std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
    CsrMatrix m(rows_, cols_, std::move(ptr), std::move(idx), std::move(val));
    m.drop_zeros();
    return m;
}

void write_coordinate(const CsrMatrix& a, std::ostream& os) {
    const auto old_precision = os.precision(17);
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = a.row_ptr()[static_cast<std::size_t>(i)]; k < a.row_ptr()[static_cast<std::size_t>(i) + 1]; ++k) {
            os << i << ' ' << a.col_idx()[static_cast<std::size_t>(k)] << ' '
               << a.values()[static_cast<std::size_t>(k)] << '\n';
        }
    }
    os.precision(old_precision);
}

// The CSR arrays of A are handed to UMFPACK as the CSC arrays of A^T, so the
// factored matrix is A^T: UMFPACK_At solves with A, UMFPACK_A with A^T.
struct LuFactor::Impl {
    CsrMatrix matrix;
    void* symbolic = nullptr;
    void* numeric = nullptr;
    double control[UMFPACK_CONTROL]{};
    double min_pivot = 0.0;
    double max_pivot = 0.0;
    bool near_singular = false;

    ~Impl() {
        if (numeric != nullptr) {
            umfpack_di_free_numeric(&numeric);
        }
        if (symbolic != nullptr) {
            umfpack_di_free_symbolic(&symbolic);
        }
    }
};

LuFactor::LuFactor(const CsrMatrix& a, PivotPolicy policy) : impl_(std::make_unique<Impl>()) {
    if (a.rows() != a.cols()) {
        throw Error("LuFactor: matrix must be square");
    }
    impl_->matrix = a;
    const int n = a.rows();
    umfpack_di_defaults(impl_->control);
    impl_->control[UMFPACK_PRL] = 0;
    impl_->control[UMFPACK_SCALE] = UMFPACK_SCALE_NONE;
    impl_->control[UMFPACK_IRSTEP] = 0;
    double info[UMFPACK_INFO]{};
    const int* ap = impl_->matrix.row_ptr().data();
    const int* ai = impl_->matrix.col_idx().data();
    const double* ax = impl_->matrix.values().data();
    int status = umfpack_di_symbolic(n, n, ap, ai, ax, &impl_->symbolic, impl_->control, info);
    if (status != UMFPACK_OK) {
        throw Error("LuFactor: symbolic analysis failed with status " + std::to_string(status));
    }
    status = umfpack_di_numeric(ap, ai, ax, impl_->symbolic, &impl_->numeric, impl_->control, info);
    impl_->min_pivot = info[UMFPACK_UMIN];
    impl_->max_pivot = info[UMFPACK_UMAX];
    if (status == UMFPACK_WARNING_singular_matrix) {
        throw SingularMatrixError("LuFactor: matrix is singular (zero pivot)");
    }
    if (status != UMFPACK_OK) {
        throw Error("LuFactor: numeric factorization failed with status " + std::to_string(status));
    }
    const double threshold = kPivotTolerance * a.max_abs();
    if (n > 0 && !(impl_->min_pivot >= threshold)) {
        if (policy == PivotPolicy::Flag && impl_->min_pivot > 0.0) {
            impl_->near_singular = true;
            return;
        }
        throw SingularMatrixError("LuFactor: pivot " + std::to_string(impl_->min_pivot) +
                                  " below threshold " + std::to_string(threshold));
    }
}

LuFactor::~LuFactor() = default;
LuFactor::LuFactor(LuFactor&&) noexcept = default;
LuFactor& LuFactor::operator=(LuFactor&&) noexcept = default;

int LuFactor::size() const { return impl_->matrix.rows(); }
const CsrMatrix& LuFactor::matrix() const { return impl_->matrix; }
double LuFactor::min_pivot() const { return impl_->min_pivot; }
double LuFactor::max_pivot() const { return impl_->max_pivot; }
bool LuFactor::near_singular() const { return impl_->near_singular; }

void LuFactor::raw_solve(std::span<const double> b, std::span<double> x, bool transposed) const {
    if (b.size() != static_cast<std::size_t>(size()) || x.size() != b.size()) {
        throw Error("LuFactor::solve: dimension mismatch");
    }
    double info[UMFPACK_INFO]{};
    const int sys = transposed ? UMFPACK_A : UMFPACK_At;
    const int status = umfpack_di_solve(sys, impl_->matrix.row_ptr().data(),
                                        impl_->matrix.col_idx().data(),
                                        impl_->matrix.values().data(), x.data(), b.data(),
                                        impl_->numeric, impl_->control, info);
    if (status != UMFPACK_OK && status != UMFPACK_WARNING_singular_matrix) {
        throw Error("LuFactor::solve failed with status " + std::to_string(status));
    }
}

namespace {

std::vector<double> refined_solve(const LuFactor& f, std::span<const double> b, bool transposed) {
    const auto n = b.size();
    std::vector<double> x(n);
    f.raw_solve(b, x, transposed);
    std::vector<double> r(n);
    if (transposed) {
        f.matrix().multiply_transposed(x, r);
    } else {
        f.matrix().multiply(x, r);
    }
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = b[i] - r[i];
    }
    std::vector<double> dx(n);
    f.raw_solve(r, dx, transposed);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] += dx[i];
    }
    return x;
}

double norm1(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += std::abs(x);
    }
    return s;
}

}  // namespace

std::vector<double> LuFactor::solve(std::span<const double> b) const {
    return refined_solve(*this, b, false);
}

std::vector<double> LuFactor::solve_transposed(std::span<const double> b) const {
    return refined_solve(*this, b, true);
}

std::vector<double> lu_solve(const LuFactor& factor, std::span<const double> b) {
    return factor.solve(b);
}

double inverse_norm1_estimate(const LuFactor& factor) {
    const int n = factor.size();
    if (n == 0) {
        return 0.0;
    }
    constexpr int kMaxIterations = 5;
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> x(un, 1.0 / n);
    std::vector<double> sign_prev;
    double estimate = 0.0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const std::vector<double> y = factor.solve(x);
        const double candidate = norm1(y);
        if (iter > 0 && candidate <= estimate) {
            break;
        }
        estimate = candidate;
        std::vector<double> sign(un);
        for (std::size_t i = 0; i < un; ++i) {
            sign[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        }
        if (iter > 0 && sign == sign_prev) {
            break;
        }
        const std::vector<double> z = factor.solve_transposed(sign);
        std::size_t jmax = 0;
        double zx = 0.0;
        for (std::size_t i = 0; i < un; ++i) {
            zx += z[i] * x[i];
            if (std::abs(z[i]) > std::abs(z[jmax])) {
                jmax = i;
            }
        }
        if (iter > 0 && std::abs(z[jmax]) <= zx) {
            break;
        }
        std::fill(x.begin(), x.end(), 0.0);
        x[jmax] = 1.0;
        sign_prev = std::move(sign);
    }
    // Second start: alternating-sign ramp, normalized in the 1-norm.
    if (n > 1) {
        std::vector<double> b(un);
        for (std::size_t i = 0; i < un; ++i) {
            b[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / (n - 1));
        }
        const double alt = norm1(factor.solve(b)) / norm1(b);
        estimate = std::max(estimate, alt);
    }
    return estimate;
}

double cond1_estimate(const CsrMatrix& a, const LuFactor& factor) {
    return a.norm1() * inverse_norm1_estimate(factor);
}

}  // namespace anisofem
