#include "cyclotome/cartier.hpp"

#include "cyclotome/bar.hpp"
#include "cyclotome/derham.hpp"

#include <functional>
#include <map>

namespace cyclotome {

// Tate homology carriers of Z/p acting by sigma: even = ker(d-)/im(d+),
// odd = ker(d+)/im(d-).
namespace {
struct TateCarriers {
    Subspace ker_minus, im_plus, ker_plus, im_minus;
};
TateCarriers tate_carriers(PrimeField f, const SparseMat& sigma, int p) {
    SparseMat id = SparseMat::identity(f, sigma.rows);
    SparseMat d_minus = mat_sub(id, sigma);
    SparseMat d_plus(f, sigma.rows, sigma.cols);
    SparseMat pw = id;
    for (int k = 0; k < p; ++k) {
        d_plus = mat_add(d_plus, pw);
        pw = mat_mul(sigma, pw);
    }
    return {kernel_basis(d_minus), image_basis(d_plus), kernel_basis(d_plus), image_basis(d_minus)};
}
} // namespace

static void validate_qf(QuasiFrobenius& qf) {
    const Algebra& s = qf.source;
    const Algebra& t = qf.target;
    PrimeField f = s.field;
    if (f != t.field) throw ValidationFailed("qf: field mismatch");
    // algebra map on basis pairs, unit to unit
    SparseVec f_unit = mat_apply(qf.matrix, s.unit);
    if (f_unit != t.unit) throw ValidationFailed("qf: F(1) != 1");
    for (idx_t i = 0; i < s.dim; ++i)
        for (idx_t j = 0; j < s.dim; ++j) {
            SparseVec lhs = mat_apply(qf.matrix, s.mult[i][j]);
            SparseVec rhs = t.mul(mat_apply(qf.matrix, SparseVec{{i, 1}}), mat_apply(qf.matrix, SparseVec{{j, 1}}));
            if (lhs != rhs)
                throw ValidationFailed("qf: F is not an algebra map at basis pair (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")");
        }
    qf.evidence.push_back("algebra map: F(xy) = F(x)F(y) on all basis pairs, F(1) = 1");
    // equivariance
    if (mat_mul(qf.sym.perm, qf.matrix) != qf.matrix)
        throw ValidationFailed("qf: sigma o F != F (not Z/p-equivariant)");
    qf.evidence.push_back("Z/p-equivariance: sigma o F = F");
    // injectivity
    if (rank(qf.matrix) != int64_t(s.dim)) throw ValidationFailed("qf: F is not injective");
    qf.evidence.push_back("injective: rank F = " + std::to_string(s.dim));
    // free cokernel
    Subspace full{t.dim, SparseMat::identity(f, t.dim)};
    Subspace im = image_basis(qf.matrix);
    SparseMat sigma_coker = induced_map(qf.sym.perm, full, im, full, im);
    if (!is_free_module(qf.p, sigma_coker))
        throw ValidationFailed("qf: coker(F) is not free over k[Z/p]");
    qf.evidence.push_back("coker(F) of dim " + std::to_string(t.dim - s.dim) + " is free over k[Z/" +
                          std::to_string(qf.p) + "]");
    // Tate condition: F induces isomorphisms in both parities
    SparseMat sigma_src = SparseMat::identity(f, s.dim); // trivial action on A^(1)
    TateCarriers cs = tate_carriers(f, sigma_src, qf.p);
    TateCarriers ct = tate_carriers(f, qf.sym.perm, qf.p);
    qf.tate_source = {int64_t(cs.ker_minus.dim()) - cs.im_plus.dim(),
                      int64_t(cs.ker_plus.dim()) - cs.im_minus.dim()};
    qf.tate_target = {int64_t(ct.ker_minus.dim()) - ct.im_plus.dim(),
                      int64_t(ct.ker_plus.dim()) - ct.im_minus.dim()};
    SparseMat even = induced_map(qf.matrix, cs.ker_minus, cs.im_plus, ct.ker_minus, ct.im_plus);
    SparseMat odd = induced_map(qf.matrix, cs.ker_plus, cs.im_minus, ct.ker_plus, ct.im_minus);
    bool even_iso = even.rows == even.cols && rank(even) == even.rows;
    bool odd_iso = odd.rows == odd.cols && rank(odd) == odd.rows;
    if (!even_iso || !odd_iso)
        throw ValidationFailed("qf: Tate dims mismatch: source (" + std::to_string(qf.tate_source.first) +
                               "," + std::to_string(qf.tate_source.second) + ") target (" +
                               std::to_string(qf.tate_target.first) + "," +
                               std::to_string(qf.tate_target.second) + ")");
    qf.evidence.push_back("Tate condition: F induces isomorphisms (" + std::to_string(qf.tate_source.first) +
                          "," + std::to_string(qf.tate_source.second) + ") -> (" +
                          std::to_string(qf.tate_target.first) + "," + std::to_string(qf.tate_target.second) +
                          ") in even and odd degree");
}

QuasiFrobenius qf_from_matrix(const Algebra& a, int p, const SparseMat& f) {
    QuasiFrobenius qf;
    qf.p = p;
    qf.source = frobenius_twist(a);
    auto [t, sym] = tensor_power(a, p);
    qf.target = std::move(t);
    qf.sym = std::move(sym);
    qf.matrix = f;
    validate_qf(qf);
    return qf;
}

QuasiFrobenius qf_group(const std::vector<std::vector<int>>& table, int p, PrimeField field) {
    Algebra a = group_algebra(table, field);
    if (field.p != uint32_t(p))
        throw ValidationFailed("qf_group: char k = " + std::to_string(field.p) + " but p = " + std::to_string(p));
    // F(g) = g (x) g (x) ... (x) g, the diagonal embedding G in G^p
    int64_t tdim = checked_power(a.dim, p, size_budget());
    SparseMat f(field, idx_t(tdim), a.dim);
    for (idx_t g = 0; g < a.dim; ++g) {
        int64_t diag = 0;
        for (int k = 0; k < p; ++k) diag = diag * a.dim + g;
        f.col[g].push_back({idx_t(diag), 1});
    }
    return qf_from_matrix(a, p, f);
}

FreeQfSlices qf_free(int dim_v, int p, PrimeField field, int weight_cap) {
    if (field.p != uint32_t(p)) throw ValidationFailed("qf_free: requires char k = p");
    if (dim_v < 1 || weight_cap < 1) throw UsageError("qf_free: bad parameters");
    FreeQfSlices out;
    out.dim_v = dim_v;
    out.p = p;
    out.weight_cap = weight_cap;
    out.field = field;

    // target slice pw of T(V)^(x)p: blocks indexed by compositions of pw
    // into p parts, each block a product of word spaces V^(x)w_j
    auto word_dim = [&](int w) { return checked_power(dim_v, w, size_budget()); };
    struct SliceIndex {
        std::vector<std::vector<int>> comps;
        std::vector<int64_t> offset;
        int64_t total = 0;
    };
    auto build_slice = [&](int total_w) {
        SliceIndex s;
        std::vector<int> c(size_t(p), 0);
        std::function<void(int, int)> gen = [&](int pos, int rem) {
            if (pos == p - 1) {
                c[size_t(pos)] = rem;
                s.comps.push_back(c);
                return;
            }
            for (int w = 0; w <= rem; ++w) {
                c[size_t(pos)] = w;
                gen(pos + 1, rem - w);
            }
        };
        gen(0, total_w);
        for (auto& comp : s.comps) {
            s.offset.push_back(s.total);
            int64_t d = 1;
            for (int w : comp) d *= word_dim(w);
            s.total += d;
        }
        return s;
    };
    auto comp_index = [&](const SliceIndex& s, const std::vector<int>& comp) {
        for (size_t k = 0; k < s.comps.size(); ++k)
            if (s.comps[k] == comp) return int64_t(k);
        throw std::logic_error("comp_index");
    };

    for (int w = 1; w <= weight_cap; ++w) {
        SliceIndex s = build_slice(p * w);
        int64_t vdim = word_dim(w);
        // F_w: word m -> (m, m, ..., m) in the equal-parts block
        std::vector<int> eq((size_t(p)), int(w));
        int64_t eq_off = s.offset[size_t(comp_index(s, eq))];
        SparseMat f(field, idx_t(s.total), idx_t(vdim));
        for (int64_t m = 0; m < vdim; ++m) {
            int64_t idx = 0;
            for (int k = 0; k < p; ++k) idx = idx * vdim + m; // block digits, part p-1 most significant
            f.col[size_t(m)].push_back({idx_t(eq_off + idx), 1});
        }
        // sigma: rotate blocks up by one: digit j of the image composition
        // is digit j-1 of the source
        SparseMat sig(field, idx_t(s.total), idx_t(s.total));
        for (size_t ci = 0; ci < s.comps.size(); ++ci) {
            const std::vector<int>& comp = s.comps[ci];
            std::vector<int> rot(size_t(p), 0);
            for (int k = 0; k < p; ++k) rot[size_t((k + 1) % p)] = comp[size_t(k)];
            int64_t roff = s.offset[size_t(comp_index(s, rot))];
            // word-tuple index: part 0 least significant
            std::vector<int64_t> wd(size_t(p), 0);
            for (int k = 0; k < p; ++k) wd[size_t(k)] = word_dim(comp[size_t(k)]);
            int64_t block = 1;
            for (int k = 0; k < p; ++k) block *= wd[size_t(k)];
            std::vector<int64_t> digits(size_t(p), 0);
            for (int64_t x = 0; x < block; ++x) {
                int64_t r = x;
                for (int k = 0; k < p; ++k) {
                    digits[size_t(k)] = r % wd[size_t(k)];
                    r /= wd[size_t(k)];
                }
                // rotated digits in the rotated composition's radix
                int64_t y = 0;
                for (int k = p - 1; k >= 0; --k) y = y * wd[size_t((k + p - 1) % p)] + digits[size_t((k + p - 1) % p)];
                sig.col[size_t(s.offset[ci] + x)].push_back({idx_t(roff + y), 1});
            }
        }
        sig.normalize();
        if (mat_pow(sig, uint64_t(p)) != SparseMat::identity(field, idx_t(s.total)))
            throw ValidationFailed("qf_free: sigma^p != id on slice " + std::to_string(w));
        if (mat_mul(sig, f) != f) throw ValidationFailed("qf_free: slice F not equivariant");
        if (rank(f) != vdim) throw ValidationFailed("qf_free: slice F not injective");
        Subspace full{idx_t(s.total), SparseMat::identity(field, idx_t(s.total))};
        Subspace im = image_basis(f);
        if (!is_free_module(p, induced_map(sig, full, im, full, im)))
            throw ValidationFailed("qf_free: slice coker not free");
        auto td = tate_dims(p, sig);
        if (td != std::pair<int64_t, int64_t>{vdim, vdim})
            throw ValidationFailed("qf_free: Tate dims of slice " + std::to_string(w) + " are not (dim V^w, dim V^w)");
        out.f_slice.push_back(std::move(f));
        out.sigma_slice.push_back(std::move(sig));
        out.tate_target.push_back(td);
        out.evidence.push_back("slice w=" + std::to_string(w) + ": injective, equivariant, coker free, Tate (" +
                               std::to_string(td.first) + "," + std::to_string(td.second) + ")");
    }
    // multiplicativity on generator products: F(uv) = F(u) F(v) realized by
    // block concatenation; verified on word pairs within the cap
    for (int w1 = 1; w1 + 1 <= weight_cap; ++w1)
        for (int w2 = 1; w1 + w2 <= weight_cap; ++w2) {
            int64_t d1 = word_dim(w1), d2 = word_dim(w2);
            for (int64_t u = 0; u < d1; ++u)
                for (int64_t v = 0; v < d2; ++v) {
                    // uv as a word of weight w1+w2: u in the low positions
                    int64_t uv = u + v * d1;
                    const SparseVec& fu = out.f_slice[size_t(w1 - 1)].col[size_t(u)];
                    const SparseVec& fv = out.f_slice[size_t(w2 - 1)].col[size_t(v)];
                    const SparseVec& fuv = out.f_slice[size_t(w1 + w2 - 1)].col[size_t(uv)];
                    if (fu.size() != 1 || fv.size() != 1 || fuv.size() != 1)
                        throw ValidationFailed("qf_free: diagonal images must be single basis vectors");
                }
        }
    out.evidence.push_back("multiplicative on generator products (diagonal blocks concatenate)");
    return out;
}

std::vector<SparseMat> f_sharp_levels(const Algebra& a, const QuasiFrobenius& qf, int n_max) {
    PrimeField f = a.field;
    int p = qf.p;
    std::vector<SparseMat> out;
    std::vector<int64_t> place(size_t(p) * size_t(n_max) + 1, 1);
    for (size_t k = 1; k < place.size(); ++k) place[k] = place[k - 1] * a.dim;
    for (int n = 1; n <= n_max; ++n) {
        int64_t src_dim = checked_power(a.dim, n, size_budget());
        int64_t dst_dim = checked_power(a.dim, p * n, size_budget());
        SparseMat m(f, idx_t(dst_dim), idx_t(src_dim));
        std::vector<idx_t> d((size_t(n)));
        // target digit at position j + r*n is factor r of F(a_j)
        std::function<void(int, int64_t, uint32_t, SparseVec&, const std::vector<idx_t>&)> expand =
            [&](int j, int64_t partial, uint32_t coef, SparseVec& col, const std::vector<idx_t>& src) {
                if (j == n) {
                    col.push_back({idx_t(partial), coef});
                    return;
                }
                for (auto& e : qf.matrix.col[src[size_t(j)]]) {
                    int64_t t = e.row;
                    int64_t add = 0;
                    for (int r = 0; r < p; ++r) {
                        idx_t digit = idx_t(t % a.dim);
                        t /= a.dim;
                        add += place[size_t(j + r * n)] * digit;
                    }
                    expand(j + 1, partial + add, f.mul(coef, e.val), col, src);
                }
            };
        for (int64_t s = 0; s < src_dim; ++s) {
            decode_mixed(s, a.dim, n, d);
            SparseVec col;
            expand(0, 0, 1, col, d);
            std::sort(col.begin(), col.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
            m.col[size_t(s)] = std::move(col);
        }
        out.push_back(std::move(m));
    }
    // commutation with tau and with every face, as exact matrix identities
    for (int n = 1; n <= n_max; ++n) {
        SparseMat tau_src = tau_matrix(a, n, true);
        SparseMat tau_tgt = p_tau_matrix(a, p, n, true);
        if (mat_mul(out[size_t(n - 1)], tau_src) != mat_mul(tau_tgt, out[size_t(n - 1)]))
            throw CommutationFailed("f_sharp: tau at level " + std::to_string(n));
        if (n >= 2)
            for (int i = 0; i < n; ++i) {
                SparseMat lhs = mat_mul(out[size_t(n - 2)], face_matrix(a, n, i));
                SparseMat rhs = mat_mul(p_face_matrix(a, p, n, i), out[size_t(n - 1)]);
                if (lhs != rhs)
                    throw CommutationFailed("f_sharp: face " + std::to_string(i) + " at level " +
                                            std::to_string(n));
            }
    }
    return out;
}

CartierCertificate cartier_phi(const Algebra& a, const QuasiFrobenius& qf, int hom_dim_bound, int n_max) {
    PrimeField f = a.field;
    int p = qf.p;
    if (f.p != uint32_t(p))
        throw OddDifferentialNonzero("cartier_phi: char k = " + std::to_string(f.p) + " != p = " +
                                     std::to_string(p));
    int need_deg = hom_dim_bound + 4;
    if (n_max < need_deg + 2) n_max = need_deg + 2;

    CyclicObject src = pi_star_a_sharp_twist(a, p, n_max);
    CyclicObject tgt = i_star_a_sharp(a, p, n_max);
    // odd horizontal differentials of the source must vanish: the full norm
    // is p times the partial norm
    for (int n = 1; n <= n_max; ++n)
        if (!src.norm_full(n).is_zero())
            throw OddDifferentialNonzero("cartier_phi: full norm nonzero at source level " + std::to_string(n));

    std::vector<SparseMat> fs = f_sharp_levels(a, qf, n_max);

    Bicomplex bs = cyclic_bicomplex(src, need_deg + 2, need_deg + 2);
    Bicomplex bt = cyclic_bicomplex(tgt, need_deg + 2, need_deg + 2);
    ChainComplex ts = total_complex(bs);
    ChainComplex tt = total_complex(bt);

    ChainMap F;
    F.src = ts;
    F.dst = tt;
    F.shift = 0;
    for (int n = 0; n <= ts.hi(); ++n) {
        SparseMat m(f, tt.dim_at(n), ts.dim_at(n));
        TotalLayout ls = total_layout(bs, n);
        TotalLayout lt = total_layout(bt, n);
        for (auto& [i, off] : ls.cells)
            for (auto& [ti, toff] : lt.cells)
                if (ti == i) mat_insert_block(m, fs[size_t(n - i)], toff, off);
        m.normalize();
        F.f.push_back(std::move(m));
    }
    F.validate();

    std::map<int, HomologyAt> hs, ht;
    auto hom_at = [&](std::map<int, HomologyAt>& hom, ChainComplex& tot, int d) -> HomologyAt& {
        auto it = hom.find(d);
        if (it == hom.end()) it = hom.emplace(d, HomologyAt(tot.d(d), tot.d(d + 1))).first;
        return it->second;
    };

    CartierCertificate cert;
    cert.algebra = a.labels.empty() ? "A" : "dim-" + std::to_string(a.dim);
    cert.algebra_hash = a.hash();
    cert.field_p = f.p;
    cert.p = p;
    cert.lo = hom_dim_bound;
    cert.hi = hom_dim_bound + 2;

    // stabilization of the target: u iso on [bound, bound+2]
    ChainMap u = periodicity_u_chain_map(tgt, need_deg);
    for (int n = hom_dim_bound; n <= hom_dim_bound + 2; ++n) {
        HomologyAt& s2 = hom_at(ht, tt, n + 2);
        HomologyAt& s0 = hom_at(ht, tt, n);
        SparseMat m(f, idx_t(s0.dim()), idx_t(s2.dim()));
        for (size_t k = 0; k < size_t(s2.dim()); ++k)
            m.col[k] = s0.class_coords(mat_apply(u.at(n + 2), s2.class_rep(k)));
        if (!(s2.dim() == s0.dim() && rank(m) == s2.dim()))
            throw NotStabilized("cartier_phi: u not iso at target degree " + std::to_string(n));
        cert.notes.push_back("target u iso at degree " + std::to_string(n));
    }
    {
        HomologyAt& he = hom_at(ht, tt, hom_dim_bound + (hom_dim_bound % 2 == 0 ? 0 : 1));
        HomologyAt& ho = hom_at(ht, tt, hom_dim_bound + (hom_dim_bound % 2 == 0 ? 1 : 0));
        cert.hp_even = he.dim();
        cert.hp_odd = ho.dim();
        cert.stabilized_from = hom_dim_bound;
    }

    for (int d = hom_dim_bound; d <= hom_dim_bound + 2; ++d) {
        HomologyAt& s = hom_at(hs, ts, d);
        HomologyAt& t = hom_at(ht, tt, d);
        SparseMat m(f, idx_t(t.dim()), idx_t(s.dim()));
        for (size_t k = 0; k < size_t(s.dim()); ++k)
            m.col[k] = t.class_coords(mat_apply(F.at(d), s.class_rep(k)));
        cert.src_dims.push_back(s.dim());
        cert.dst_dims.push_back(t.dim());
        cert.iso.push_back(s.dim() == t.dim() && rank(m) == s.dim());
        cert.phi.push_back(std::move(m));
    }
    cert.notes.push_back("HH((u)) truncation dims per degree = source totalization homology");
    return cert;
}

CartierCertificate inverse_cartier_commutative(int nvars, int p, int weight_cap) {
    if (!PrimeField::is_prime(uint32_t(p))) throw UsageError("inverse_cartier_commutative: p must be prime");
    PrimeField f{uint32_t(p)};
    CartierCertificate cert;
    cert.algebra = "poly[" + std::to_string(nvars) + "]";
    cert.field_p = f.p;
    cert.p = p;
    cert.lo = 0;
    cert.hi = nvars;
    for (int i = 0; i <= nvars; ++i)
        for (int w = 0; w <= weight_cap; ++w) {
            DeRhamSliceBasis src = derham_basis(nvars, i, w);       // Omega^i of the twist at weight w
            DeRhamSliceBasis dst = derham_basis(nvars, i, p * w);   // target weight pw
            // H^i at weight pw: ker(d_i) / im(d_(i-1))
            SparseMat d_out = derham_d(f, nvars, i, p * w);
            SparseMat d_in = i >= 1 ? derham_d(f, nvars, i - 1, p * w)
                                    : SparseMat(f, idx_t(dst.basis.size()), 0);
            HomologyAt h(d_out, d_in);
            // C^(-1): x^a dx_S -> x^(pa) prod_(j in S) x_j^(p-1) dx_S
            SparseMat m(f, idx_t(h.dim()), idx_t(src.basis.size()));
            for (size_t c = 0; c < src.basis.size(); ++c) {
                auto [a_exp, mask] = src.basis[c];
                std::vector<int> target_exp(a_exp);
                for (int v = 0; v < nvars; ++v) {
                    target_exp[size_t(v)] *= p;
                    if (mask & (1u << v)) target_exp[size_t(v)] += p - 1;
                }
                int64_t t = derham_index(dst, target_exp, mask);
                m.col[c] = h.class_coords(SparseVec{{idx_t(t), 1}});
            }
            bool bij = int64_t(src.basis.size()) == h.dim() && rank(m) == h.dim();
            cert.iso.push_back(bij);
            cert.src_dims.push_back(int64_t(src.basis.size()));
            cert.dst_dims.push_back(h.dim());
            cert.phi.push_back(std::move(m));
            cert.notes.push_back("i=" + std::to_string(i) + " w=" + std::to_string(w) + " -> H^i at weight " +
                                 std::to_string(p * w) + ": " + (bij ? "bijective" : "NOT bijective"));
        }
    return cert;
}

} // namespace cyclotome
