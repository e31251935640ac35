#include "anisofem/assembly.hpp"

#include <algorithm>
#include <array>

#include "anisofem/errors.hpp"
#include "anisofem/quadrature.hpp"

namespace anisofem {

const char* to_string(FormKind kind) {
    switch (kind) {
        case FormKind::Full: return "full";
        case FormKind::Parallel: return "parallel";
        case FormKind::Mass: return "mass";
    }
    return "?";
}

namespace {

constexpr int kMaxLocal = 9;

void check_compatible(const FemSpace& row, const FemSpace& col) {
    if (&row.mesh() != &col.mesh()) {
        throw Error("assemble: row and column spaces must share one mesh");
    }
}

// Local matrix of element e, row-major nr x nc.
void element_matrix(const FemSpace& row, const FemSpace& col, FormKind kind,
                    const FieldSpec& field, const QuadratureRule& rule, int e,
                    std::span<double> out) {
    const int nr = row.dofs_per_element();
    const int nc = col.dofs_per_element();
    std::fill(out.begin(), out.end(), 0.0);
    std::array<double, kMaxLocal> vr{}, vc{};
    std::array<Vec2, kMaxLocal> gr{}, gc{};
    for (int p = 0; p < rule.size(); ++p) {
        const Point ref = rule.points[static_cast<std::size_t>(p)];
        const MappedPoint mp = map_to_physical(row.mesh(), e, ref);
        const double w = rule.weights[static_cast<std::size_t>(p)] * std::abs(mp.det);
        eval_reference_basis(row.family(), ref, vr, gr);
        eval_reference_basis(col.family(), ref, vc, gc);
        for (int a = 0; a < nr; ++a) {
            gr[static_cast<std::size_t>(a)] = mp.jac_inv_t * gr[static_cast<std::size_t>(a)];
        }
        for (int b = 0; b < nc; ++b) {
            gc[static_cast<std::size_t>(b)] = mp.jac_inv_t * gc[static_cast<std::size_t>(b)];
        }
        switch (kind) {
            case FormKind::Mass:
                for (int a = 0; a < nr; ++a) {
                    for (int b = 0; b < nc; ++b) {
                        out[static_cast<std::size_t>(a * nc + b)] +=
                            w * vr[static_cast<std::size_t>(a)] * vc[static_cast<std::size_t>(b)];
                    }
                }
                break;
            case FormKind::Full: {
                const Mat2 tensor = eval_A(field, mp.x.x, mp.x.y);
                for (int b = 0; b < nc; ++b) {
                    gc[static_cast<std::size_t>(b)] = tensor * gc[static_cast<std::size_t>(b)];
                }
                for (int a = 0; a < nr; ++a) {
                    for (int b = 0; b < nc; ++b) {
                        out[static_cast<std::size_t>(a * nc + b)] +=
                            w * dot(gr[static_cast<std::size_t>(a)], gc[static_cast<std::size_t>(b)]);
                    }
                }
                break;
            }
            case FormKind::Parallel: {
                const Vec2 dir = eval_b(field, mp.x.x, mp.x.y);
                const double coef = w * eval_a_par(field, mp.x.x, mp.x.y);
                std::array<double, kMaxLocal> dr{}, dc{};
                for (int a = 0; a < nr; ++a) {
                    dr[static_cast<std::size_t>(a)] = dot(dir, gr[static_cast<std::size_t>(a)]);
                }
                for (int b = 0; b < nc; ++b) {
                    dc[static_cast<std::size_t>(b)] = dot(dir, gc[static_cast<std::size_t>(b)]);
                }
                for (int a = 0; a < nr; ++a) {
                    for (int b = 0; b < nc; ++b) {
                        out[static_cast<std::size_t>(a * nc + b)] +=
                            coef * dr[static_cast<std::size_t>(a)] * dc[static_cast<std::size_t>(b)];
                    }
                }
                break;
            }
        }
    }
}

void element_rhs(const FemSpace& space, const SourceFunction& source, const QuadratureRule& rule,
                 int e, std::span<double> out) {
    const int n = space.dofs_per_element();
    std::fill(out.begin(), out.end(), 0.0);
    std::array<double, kMaxLocal> v{};
    std::array<Vec2, kMaxLocal> g{};
    for (int p = 0; p < rule.size(); ++p) {
        const Point ref = rule.points[static_cast<std::size_t>(p)];
        const MappedPoint mp = map_to_physical(space.mesh(), e, ref);
        const double w = rule.weights[static_cast<std::size_t>(p)] * std::abs(mp.det);
        eval_reference_basis(space.family(), ref, v, g);
        const SourceTerms s = source(mp.x.x, mp.x.y);
        for (int a = 0; a < n; ++a) {
            const Vec2 grad = mp.jac_inv_t * g[static_cast<std::size_t>(a)];
            out[static_cast<std::size_t>(a)] += w * (s.value * v[static_cast<std::size_t>(a)] + dot(s.flux, grad));
        }
    }
}

// Sorted column pattern of the coupled row/column dofs.
CsrMatrix build_pattern(const FemSpace& row, const FemSpace& col) {
    const int nel = row.mesh().num_elements();
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(row.num_dofs()));
    for (int e = 0; e < nel; ++e) {
        const auto rd = row.element_dofs(e);
        const auto cd = col.element_dofs(e);
        for (int i : rd) {
            auto& c = cols[static_cast<std::size_t>(i)];
            c.insert(c.end(), cd.begin(), cd.end());
        }
    }
    std::vector<int> ptr(cols.size() + 1, 0);
    std::vector<int> idx;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        auto& c = cols[i];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        idx.insert(idx.end(), c.begin(), c.end());
        ptr[i + 1] = static_cast<int>(idx.size());
    }
    std::vector<double> val(idx.size(), 0.0);
    return {row.num_dofs(), col.num_dofs(), std::move(ptr), std::move(idx), std::move(val)};
}

}  // namespace

CsrMatrix assemble(const FemSpace& row_space, const FemSpace& col_space, FormKind kind,
                   const FieldSpec& field) {
    check_compatible(row_space, col_space);
    const QuadratureRule rule = assembly_rule(row_space.mesh().kind());
    const int nel = row_space.mesh().num_elements();
    const int nr = row_space.dofs_per_element();
    const int nc = col_space.dofs_per_element();
    const auto block = static_cast<std::size_t>(nr * nc);
    std::vector<double> local(block * static_cast<std::size_t>(nel));

#pragma omp parallel for schedule(static)
    for (int e = 0; e < nel; ++e) {
        element_matrix(row_space, col_space, kind, field, rule, e,
                       std::span<double>(local.data() + block * static_cast<std::size_t>(e), block));
    }

    CsrMatrix m = build_pattern(row_space, col_space);
    auto& values = m.values();
    for (int e = 0; e < nel; ++e) {
        const auto rd = row_space.element_dofs(e);
        const auto cd = col_space.element_dofs(e);
        const double* k = local.data() + block * static_cast<std::size_t>(e);
        for (int a = 0; a < nr; ++a) {
            for (int b = 0; b < nc; ++b) {
                const auto pos = m.find(rd[static_cast<std::size_t>(a)], cd[static_cast<std::size_t>(b)]);
                values[static_cast<std::size_t>(pos)] += k[a * nc + b];
            }
        }
    }
    m.drop_zeros();
    return m;
}

std::vector<double> assemble_rhs(const FemSpace& space, const SourceFunction& source) {
    const QuadratureRule rule = source_rule(space.mesh().kind());
    const int nel = space.mesh().num_elements();
    const auto n = static_cast<std::size_t>(space.dofs_per_element());
    std::vector<double> local(n * static_cast<std::size_t>(nel));

#pragma omp parallel for schedule(static)
    for (int e = 0; e < nel; ++e) {
        element_rhs(space, source, rule, e, std::span<double>(local.data() + n * static_cast<std::size_t>(e), n));
    }

    std::vector<double> rhs(static_cast<std::size_t>(space.num_dofs()), 0.0);
    for (int e = 0; e < nel; ++e) {
        const auto dofs = space.element_dofs(e);
        for (std::size_t a = 0; a < n; ++a) {
            rhs[static_cast<std::size_t>(dofs[a])] += local[n * static_cast<std::size_t>(e) + a];
        }
    }
    return rhs;
}

void apply_constraints(CsrMatrix& matrix, std::vector<double>& rhs, std::span<const char> mask,
                       std::span<const double> values) {
    const int n = matrix.rows();
    if (matrix.cols() != n || mask.size() != static_cast<std::size_t>(n) ||
        values.size() != mask.size() || rhs.size() != mask.size()) {
        throw Error("apply_constraints: dimension mismatch");
    }
    const auto& ptr = matrix.row_ptr();
    const auto& idx = matrix.col_idx();
    auto& val = matrix.values();
    TripletList extra(n, n);
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        bool has_diagonal = false;
        for (int k = ptr[ui]; k < ptr[ui + 1]; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const auto j = static_cast<std::size_t>(idx[uk]);
            if (mask[ui] != 0) {
                val[uk] = (j == ui) ? 1.0 : 0.0;
                has_diagonal = has_diagonal || j == ui;
            } else if (mask[j] != 0) {
                rhs[ui] -= val[uk] * values[j];
                val[uk] = 0.0;
            }
        }
        if (mask[ui] != 0) {
            rhs[ui] = values[ui];
            if (!has_diagonal) {
                extra.add(i, i, 1.0);
            }
        }
    }
    matrix.drop_zeros();
    const CsrMatrix diag = extra.to_csr();
    if (diag.nnz() == 0) {
        return;
    }
    // Rare: a constrained row without a stored diagonal. Merge it in.
    TripletList merged(n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = matrix.row_ptr()[static_cast<std::size_t>(i)]; k < matrix.row_ptr()[static_cast<std::size_t>(i) + 1]; ++k) {
            merged.add(i, matrix.col_idx()[static_cast<std::size_t>(k)], matrix.values()[static_cast<std::size_t>(k)]);
        }
        for (int k = diag.row_ptr()[static_cast<std::size_t>(i)]; k < diag.row_ptr()[static_cast<std::size_t>(i) + 1]; ++k) {
            merged.add(i, i, 1.0);
        }
    }
    matrix = merged.to_csr();
}

namespace reference {

CsrMatrix assemble(const FemSpace& row_space, const FemSpace& col_space, FormKind kind,
                   const FieldSpec& field) {
    check_compatible(row_space, col_space);
    const QuadratureRule rule = assembly_rule(row_space.mesh().kind());
    const int nel = row_space.mesh().num_elements();
    const int nr = row_space.dofs_per_element();
    const int nc = col_space.dofs_per_element();
    std::vector<double> local(static_cast<std::size_t>(nr * nc));
    TripletList triplets(row_space.num_dofs(), col_space.num_dofs());
    triplets.reserve(static_cast<std::size_t>(nel) * local.size());
    for (int e = 0; e < nel; ++e) {
        element_matrix(row_space, col_space, kind, field, rule, e, local);
        const auto rd = row_space.element_dofs(e);
        const auto cd = col_space.element_dofs(e);
        for (int a = 0; a < nr; ++a) {
            for (int b = 0; b < nc; ++b) {
                triplets.add(rd[static_cast<std::size_t>(a)], cd[static_cast<std::size_t>(b)],
                             local[static_cast<std::size_t>(a * nc + b)]);
            }
        }
    }
    return triplets.to_csr();
}

std::vector<double> assemble_rhs(const FemSpace& space, const SourceFunction& source) {
    const QuadratureRule rule = source_rule(space.mesh().kind());
    const int nel = space.mesh().num_elements();
    std::vector<double> local(static_cast<std::size_t>(space.dofs_per_element()));
    std::vector<double> rhs(static_cast<std::size_t>(space.num_dofs()), 0.0);
    for (int e = 0; e < nel; ++e) {
        element_rhs(space, source, rule, e, local);
        const auto dofs = space.element_dofs(e);
        for (std::size_t a = 0; a < local.size(); ++a) {
            rhs[static_cast<std::size_t>(dofs[a])] += local[a];
        }
    }
    return rhs;
}

}  // namespace reference

}  // namespace anisofem
