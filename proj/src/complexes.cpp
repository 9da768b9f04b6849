#include "cyclotome/complexes.hpp"

#include <algorithm>

namespace cyclotome {

SparseMat ChainComplex::d(int n) const {
    int k = n - lo;
    if (k >= 1 && k < int(dims.size())) return diff[size_t(k)];
    // zero map with the right shape against the zero-padded complex
    return SparseMat(field, dim_at(n - 1), dim_at(n));
}

void ChainComplex::validate() const {
    for (int n = lo + 2; n <= hi(); ++n) {
        SparseMat dd = mat_mul(d(n - 1), d(n));
        if (!dd.is_zero()) throw ChainMapViolation("d o d != 0 at degree " + std::to_string(n));
    }
}

SparseMat ChainMap::at(int n) const {
    int k = n - src.lo;
    if (k >= 0 && k < int(f.size())) return f[size_t(k)];
    return SparseMat(src.field, dst.dim_at(n + shift), src.dim_at(n));
}

void ChainMap::validate() const {
    for (int n = src.lo; n <= src.hi() + 1; ++n) {
        SparseMat lhs = mat_mul(at(n - 1), src.d(n));
        SparseMat rhs = mat_mul(dst.d(n + shift), at(n));
        if (lhs != rhs) throw ChainMapViolation("chain map fails to commute at degree " + std::to_string(n));
    }
}

void Bicomplex::validate() const {
    if (has_corr()) {
        total_complex(*this).validate();
        return;
    }
    auto zero_ok = [&](const SparseMat& m, const char* what, int i, int j) {
        if (!m.is_zero())
            throw ChainMapViolation(std::string(what) + " fails at cell (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    };
    for (int i = 0; i < ncols; ++i)
        for (int j = 0; j < nrows; ++j) {
            if (i >= 2) zero_ok(mat_mul(h[size_t(i - 1)][size_t(j)], h[size_t(i)][size_t(j)]), "h o h = 0", i, j);
            if (j >= 2) zero_ok(mat_mul(v[size_t(i)][size_t(j - 1)], v[size_t(i)][size_t(j)]), "v o v = 0", i, j);
            if (i >= 1 && j >= 1) {
                SparseMat hv = mat_mul(h[size_t(i)][size_t(j - 1)], v[size_t(i)][size_t(j)]);
                SparseMat vh = mat_mul(v[size_t(i - 1)][size_t(j)], h[size_t(i)][size_t(j)]);
                if (conv == Convention::commute_with_sign) {
                    if (hv != vh) throw ChainMapViolation("h and v do not commute at cell (" + std::to_string(i) +
                                                          "," + std::to_string(j) + ")");
                } else {
                    if (!mat_add(hv, vh).is_zero())
                        throw ChainMapViolation("h and v do not anticommute at cell (" + std::to_string(i) + "," +
                                                std::to_string(j) + ")");
                }
            }
        }
}

TotalLayout total_layout(const Bicomplex& b, int n) {
    TotalLayout out;
    for (int i = std::max(0, n - b.nrows + 1); i <= std::min(b.ncols - 1, n); ++i) {
        idx_t dm = b.dims[size_t(i)][size_t(n - i)];
        if (dm == 0) continue;
        out.cells.push_back({i, out.total});
        out.total += dm;
    }
    return out;
}

ChainComplex total_complex(const Bicomplex& b) {
    ChainComplex c;
    c.field = b.field;
    c.lo = 0;
    int top = b.ncols + b.nrows - 2;
    std::vector<TotalLayout> lay(size_t(top + 1));
    for (int n = 0; n <= top; ++n) {
        lay[size_t(n)] = total_layout(b, n);
        c.dims.push_back(lay[size_t(n)].total);
    }
    c.diff.resize(size_t(top + 1), SparseMat());
    for (int n = 1; n <= top; ++n) {
        SparseMat D(b.field, lay[size_t(n - 1)].total, lay[size_t(n)].total);
        auto offset_of = [&](int deg, int i) -> int64_t {
            for (auto& [ci, off] : lay[size_t(deg)].cells)
                if (ci == i) return off;
            return -1;
        };
        for (auto& [i, off] : lay[size_t(n)].cells) {
            int j = n - i;
            if (i >= 1) {
                int64_t t = offset_of(n - 1, i - 1);
                if (t >= 0) mat_insert_block(D, b.h[size_t(i)][size_t(j)], idx_t(t), off);
            }
            if (j >= 1) {
                int64_t t = offset_of(n - 1, i);
                if (t >= 0) {
                    int64_t sgn = (b.conv == Bicomplex::Convention::commute_with_sign && (i % 2)) ? -1 : 1;
                    mat_insert_block(D, b.v[size_t(i)][size_t(j)], idx_t(t), off, sgn);
                }
            }
            if (b.has_corr() && j >= 2 && i + 1 < b.ncols) {
                const SparseMat& cm = b.corr[size_t(i)][size_t(j)];
                if (cm.rows > 0 || cm.cols > 0) {
                    int64_t t = offset_of(n - 1, i + 1);
                    if (t >= 0) mat_insert_block(D, cm, idx_t(t), off);
                }
            }
        }
        D.normalize();
        c.diff[size_t(n)] = std::move(D);
    }
    return c;
}

std::vector<int64_t> homology_dims(const ChainComplex& c, int from, int to) {
    if (from > to) throw OutOfRange("homology_dims: empty range");
    std::vector<int64_t> out;
    std::vector<int64_t> rk(size_t(to - from + 3), -1);
    auto rank_at = [&](int n) -> int64_t {
        size_t k = size_t(n - from + 1);
        if (rk[k] < 0) rk[k] = rank(c.d(n));
        return rk[k];
    };
    for (int n = from; n <= to; ++n) {
        int64_t dim_n = c.dim_at(n);
        int64_t h = dim_n - rank_at(n) - rank_at(n + 1);
        out.push_back(h);
    }
    return out;
}

SparseMat induced_on_homology(const ChainMap& fm, int n) {
    HomologyAt src(fm.src.d(n), fm.src.d(n + 1));
    HomologyAt dst(fm.dst.d(n + fm.shift), fm.dst.d(n + fm.shift + 1));
    SparseMat f = fm.at(n);
    SparseMat out(fm.src.field, idx_t(dst.dim()), idx_t(src.dim()));
    for (size_t k = 0; k < size_t(src.dim()); ++k) {
        SparseVec w = mat_apply(f, src.class_rep(k));
        out.col[k] = dst.class_coords(std::move(w));
    }
    return out;
}

// E_r by the standard filtered-complex formula on the total complex:
//   Z_r(i,j)   = { x in F_i C_n : D x in F_(i-r) }
//   E_r(i,j)   = Z_r / (Z_(r-1)(i-1,j+1) + D Z_(r-1)(i+r-1, j-r+2))
// where F_i is the by-column filtration (cells laid out by increasing i, so
// F_i is a coordinate prefix of the total space).
std::vector<std::vector<std::vector<int64_t>>> spectral_sequence_dims(const Bicomplex& b, int pages) {
    ChainComplex tot = total_complex(b);
    int top = tot.hi();
    std::vector<TotalLayout> lay(size_t(top + 1));
    for (int n = 0; n <= top; ++n) lay[size_t(n)] = total_layout(b, n);

    auto prefix_dim = [&](int n, int maxcol) -> idx_t {
        if (n < 0 || n > top) return 0;
        idx_t d = 0;
        for (auto& [ci, off] : lay[size_t(n)].cells)
            if (ci <= maxcol) d = off + b.dims[size_t(ci)][size_t(n - ci)];
        return d;
    };

    // Z_r(i, n) as a subspace of C_n (supported on the F_i prefix)
    auto z_r = [&](int r, int i, int n) -> Subspace {
        idx_t fi = prefix_dim(n, i);
        if (fi == 0) return Subspace{tot.dim_at(n), SparseMat(b.field, tot.dim_at(n), 0)};
        const SparseMat& D = tot.diff[size_t(n)];
        idx_t cut = prefix_dim(n - 1, i - r); // rows <= cut are allowed
        SparseMat test(b.field, 0, fi);
        if (n >= 1) {
            test = SparseMat(b.field, tot.dim_at(n - 1) - cut, fi);
            for (idx_t c = 0; c < fi; ++c)
                for (auto& e : D.col[c])
                    if (e.row >= cut) test.col[c].push_back({e.row - cut, e.val});
        }
        Subspace k = kernel_basis(test);
        // embed into C_n (prefix coordinates are the ambient's first fi coords)
        SparseMat emb(b.field, tot.dim_at(n), k.dim());
        emb.col = k.basis.col;
        return Subspace{tot.dim_at(n), std::move(emb)};
    };

    std::vector<std::vector<std::vector<int64_t>>> out(
        size_t(pages + 1),
        std::vector<std::vector<int64_t>>(size_t(b.ncols), std::vector<int64_t>(size_t(b.nrows), 0)));
    for (int i = 0; i < b.ncols; ++i)
        for (int j = 0; j < b.nrows; ++j) out[0][size_t(i)][size_t(j)] = b.dims[size_t(i)][size_t(j)];

    for (int r = 1; r <= pages; ++r) {
        for (int i = 0; i < b.ncols; ++i)
            for (int j = 0; j < b.nrows; ++j) {
                int n = i + j;
                if (b.dims[size_t(i)][size_t(j)] == 0) continue;
                Subspace zr = z_r(r, i, n);
                Subspace za = z_r(r - 1, i - 1, n); // lives in F_(i-1), same ambient
                // D Z_(r-1) at (i+r-1) in degree n+1
                std::vector<SparseVec> cols(za.basis.col.begin(), za.basis.col.end());
                if (n + 1 <= top) {
                    Subspace zb = z_r(r - 1, i + r - 1, n + 1);
                    const SparseMat& D = tot.diff[size_t(n + 1)];
                    for (idx_t c = 0; c < zb.dim(); ++c) cols.push_back(mat_apply(D, zb.basis.col[c]));
                }
                Subspace denom = subspace_from_columns(b.field, tot.dim_at(n), cols);
                out[size_t(r)][size_t(i)][size_t(j)] = int64_t(zr.dim()) - int64_t(denom.dim());
            }
    }
    return out;
}

E2Cell e2_cell(const Bicomplex& b, int i, int j) {
    if (b.has_corr()) throw UsageError("e2_cell: corrected bicomplexes not supported");
    PrimeField f = b.field;
    idx_t dm = b.dims[size_t(i)][size_t(j)];

    Subspace kerv = j >= 1 ? kernel_basis(b.v[size_t(i)][size_t(j)])
                           : Subspace{dm, SparseMat::identity(f, dm)};
    // numerator: x in ker v with h x in W = im(v) of the left neighbor
    std::vector<SparseVec> num_cols;
    if (i >= 1) {
        idx_t left_dim = b.dims[size_t(i - 1)][size_t(j)];
        Subspace W = (j + 1 < b.nrows) ? image_basis(b.v[size_t(i - 1)][size_t(j + 1)])
                                       : Subspace{left_dim, SparseMat(f, left_dim, 0)};
        const SparseMat& hm = b.h[size_t(i)][size_t(j)];
        // kernel of (reduce mod W) o h restricted to ker v
        Elim welim(W.basis);
        SparseMat test(f, hm.rows, kerv.dim());
        for (idx_t c = 0; c < kerv.dim(); ++c) test.col[c] = welim.reduce(mat_apply(hm, kerv.basis.col[c]));
        Subspace kk = kernel_basis(test);
        for (idx_t c = 0; c < kk.dim(); ++c) num_cols.push_back(mat_apply(kerv.basis, kk.basis.col[c]));
    } else {
        for (idx_t c = 0; c < kerv.dim(); ++c) num_cols.push_back(kerv.basis.col[c]);
    }
    Subspace num = subspace_from_columns(f, dm, num_cols);

    // denominator: v(cell above) + h(ker v of the right neighbor)
    std::vector<SparseVec> den_cols;
    if (j + 1 < b.nrows) {
        const SparseMat& vm = b.v[size_t(i)][size_t(j + 1)];
        for (idx_t c = 0; c < vm.cols; ++c)
            if (!vm.col[c].empty()) den_cols.push_back(vm.col[c]);
    }
    if (i + 1 < b.ncols) {
        Subspace kr = j >= 1 ? kernel_basis(b.v[size_t(i + 1)][size_t(j)])
                             : Subspace{b.dims[size_t(i + 1)][size_t(j)],
                                        SparseMat::identity(f, b.dims[size_t(i + 1)][size_t(j)])};
        const SparseMat hm = b.h[size_t(i + 1)][size_t(j)];
        for (idx_t c = 0; c < kr.dim(); ++c) {
            SparseVec w = mat_apply(hm, kr.basis.col[c]);
            if (!w.empty()) den_cols.push_back(w);
        }
    }
    Subspace den = subspace_from_columns(f, dm, den_cols);
    Subspace reps = quotient_basis(den, num);
    return E2Cell{std::move(num), std::move(den), std::move(reps)};
}

SparseMat ss_d2_matrix(const Bicomplex& b, int i, int j) {
    if (i < 2) throw OutOfRange("ss_d2_matrix: need i >= 2");
    E2Cell src = e2_cell(b, i, j);
    E2Cell dst = e2_cell(b, i - 2, j + 1);
    PrimeField f = b.field;
    const SparseMat& vmid = b.v[size_t(i - 1)][size_t(j + 1)];
    Elim velim(vmid);
    ElimSolver vsolve(velim, [&](idx_t c) { return vmid.col[c]; });
    SparseMat out(f, dst.reps.dim(), src.reps.dim());
    for (idx_t c = 0; c < src.reps.dim(); ++c) {
        SparseVec hx = mat_apply(b.h[size_t(i)][size_t(j)], src.reps.basis.col[c]);
        // v y = (-1)^i h x, then d2[x] = h y
        uint32_t s = (i % 2) ? f.neg(1) : 1;
        auto y = vsolve.solve(vec_scale(f, hx, s));
        if (!y) throw ChainMapViolation("ss_d2_matrix: zigzag solve failed (not an E2 class?)");
        SparseVec d2x = mat_apply(b.h[size_t(i - 1)][size_t(j + 1)], *y);
        out.col[c] = quotient_coords_in(dst.denominator, dst.reps, std::move(d2x), "ss_d2_matrix");
    }
    return out;
}

} // namespace cyclotome
