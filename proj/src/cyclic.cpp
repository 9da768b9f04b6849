#include "cyclotome/cyclic.hpp"

#include "cyclotome/bar.hpp"
#include "cyclotome/cache.hpp"
#include "cyclotome/lambda.hpp"

#include <map>

namespace cyclotome {

static SparseMat alternating_sum(const PrimeField& f, const std::vector<SparseMat>& faces, int upto) {
    SparseMat acc(f, faces.at(0).rows, faces.at(0).cols);
    for (int i = 0; i <= upto; ++i)
        for (idx_t c = 0; c < acc.cols; ++c)
            acc.col[c] = vec_axpy(f, acc.col[c], i % 2 ? f.neg(1) : 1, faces[size_t(i)].col[c]);
    return acc;
}

SparseMat CyclicObject::b(int n) const {
    if (n < 2) return SparseMat(field, 0, dim_at(1));
    return alternating_sum(field, level(n).faces, n - 1);
}

SparseMat CyclicObject::bprime(int n) const {
    if (n < 2) return SparseMat(field, 0, dim_at(1));
    return alternating_sum(field, level(n).faces, n - 2);
}

SparseMat CyclicObject::sigma(int n) const { return mat_pow(level(n).tau, uint64_t(n)); }

static SparseMat geometric_sum(const SparseMat& t, int terms) {
    SparseMat acc(t.field, t.rows, t.cols);
    SparseMat pw = SparseMat::identity(t.field, t.rows);
    for (int k = 0; k < terms; ++k) {
        acc = mat_add(acc, pw);
        pw = mat_mul(t, pw);
    }
    return acc;
}

SparseMat CyclicObject::norm_full(int n) const { return geometric_sum(level(n).tau, p * n); }
SparseMat CyclicObject::norm_partial(int n) const { return geometric_sum(level(n).tau, n); }
SparseMat CyclicObject::norm_sigma(int n) const { return geometric_sum(sigma(n), p); }

void CyclicObject::validate() const {
    for (int n = 1; n <= n_max(); ++n) {
        const CyclicLevel& lv = level(n);
        if (lv.tau.rows != lv.dim || lv.tau.cols != lv.dim)
            throw ValidationFailed("cyclic object: tau shape at level " + std::to_string(n));
        if (mat_pow(lv.tau, uint64_t(int64_t(p) * n)) != SparseMat::identity(field, lv.dim))
            throw ValidationFailed("cyclic object: tau^(pn) != id at level " + std::to_string(n));
        if (n == 1) continue;
        if (int(lv.faces.size()) != n)
            throw ValidationFailed("cyclic object: expected " + std::to_string(n) + " faces at level " +
                                   std::to_string(n));
        // m_(i+1) tau = -tau m_i with the signed tau (level sign rule)
        const SparseMat& tau_src = lv.tau;
        SparseMat tau_dst = level(n - 1).tau;
        for (int i = 0; i + 1 <= n - 1; ++i) {
            SparseMat lhs = mat_mul(lv.faces[size_t(i + 1)], tau_src);
            SparseMat rhs = mat_scale(mat_mul(tau_dst, lv.faces[size_t(i)]), -1);
            if (lhs != rhs)
                throw ValidationFailed("cyclic object: face/tau relation fails at level " + std::to_string(n) +
                                       " face " + std::to_string(i));
        }
        // sigma commutes with every face
        SparseMat sig_src = sigma(n), sig_dst = sigma(n - 1);
        for (int i = 0; i < n; ++i)
            if (mat_mul(sig_dst, lv.faces[size_t(i)]) != mat_mul(lv.faces[size_t(i)], sig_src))
                throw ValidationFailed("cyclic object: sigma does not commute with face " + std::to_string(i) +
                                       " at level " + std::to_string(n));
    }
}

CyclicObject a_sharp(const Algebra& a, int n_max) {
    const MatrixCache& cache = global_matrix_cache();
    CyclicObject e;
    e.field = a.field;
    e.p = 1;
    e.provenance = "A_#";
    e.algebra_hash = a.hash();
    for (int n = 1; n <= n_max; ++n) {
        CyclicLevel lv;
        lv.dim = idx_t(checked_power(a.dim, n, size_budget()));
        lv.tau = cache.get_or_build(e.algebra_hash, "asharp-tau", 1, n, [&] { return tau_matrix(a, n, true); });
        if (n >= 2)
            for (int i = 0; i < n; ++i)
                lv.faces.push_back(cache.get_or_build(e.algebra_hash, "asharp-face" + std::to_string(i), 1, n,
                                                      [&] { return face_matrix(a, n, i); }));
        e.levels.push_back(std::move(lv));
    }
    e.validate();
    return e;
}

CyclicObject i_star_a_sharp(const Algebra& a, int p, int n_max) {
    const MatrixCache& cache = global_matrix_cache();
    CyclicObject e;
    e.field = a.field;
    e.p = p;
    e.provenance = "i*A_#";
    e.algebra_hash = a.hash();
    for (int n = 1; n <= n_max; ++n) {
        CyclicLevel lv;
        lv.dim = idx_t(checked_power(a.dim, p * n, size_budget()));
        lv.tau = cache.get_or_build(e.algebra_hash, "istar-tau", p, n,
                                    [&] { return p_tau_matrix(a, p, n, true); });
        if (n >= 2)
            for (int i = 0; i < n; ++i)
                lv.faces.push_back(cache.get_or_build(e.algebra_hash, "istar-face" + std::to_string(i), p, n,
                                                      [&] { return p_face_matrix(a, p, n, i); }));
        e.levels.push_back(std::move(lv));
    }
    e.validate();
    return e;
}

CyclicObject pi_star_a_sharp_twist(const Algebra& a, int p, int n_max) {
    CyclicObject e;
    e.field = a.field;
    e.p = p;
    e.provenance = "pi*A_#^(1)";
    e.algebra_hash = a.hash();
    for (int n = 1; n <= n_max; ++n) {
        CyclicLevel lv;
        lv.dim = idx_t(checked_power(a.dim, n, size_budget()));
        lv.tau = tau_matrix(a, n, true);
        if (n >= 2)
            for (int i = 0; i < n; ++i) lv.faces.push_back(face_matrix(a, n, i));
        e.levels.push_back(std::move(lv));
    }
    e.validate();
    return e;
}

CyclicObject cyclic_object_from_lambda(const Algebra& a, int p, int n_max) {
    CyclicObject e;
    e.field = a.field;
    e.p = p;
    e.provenance = "lambda-generated i*A_#";
    e.algebra_hash = a.hash();
    for (int n = 1; n <= n_max; ++n) {
        CyclicLevel lv;
        lv.dim = idx_t(checked_power(a.dim, p * n, size_budget()));
        lv.tau = linearize_A_sharp(a, lambda_tau(p, n));
        if (n >= 2)
            for (int i = 0; i < n; ++i) lv.faces.push_back(linearize_A_sharp(a, lambda_face(p, n, i)));
        e.levels.push_back(std::move(lv));
    }
    e.validate();
    return e;
}

CyclicObject coker_object(const CyclicObject& tgt, const std::vector<SparseMat>& f_levels,
                          const std::string& provenance) {
    if (int(f_levels.size()) < tgt.n_max()) throw UsageError("coker_object: missing levels");
    CyclicObject e;
    e.field = tgt.field;
    e.p = tgt.p;
    e.provenance = provenance;
    e.algebra_hash = tgt.algebra_hash;
    std::vector<Subspace> full, im;
    for (int n = 1; n <= tgt.n_max(); ++n) {
        full.push_back(Subspace{tgt.dim_at(n), SparseMat::identity(tgt.field, tgt.dim_at(n))});
        im.push_back(image_basis(f_levels[size_t(n - 1)]));
    }
    for (int n = 1; n <= tgt.n_max(); ++n) {
        CyclicLevel lv;
        lv.tau = induced_map(tgt.level(n).tau, full[size_t(n - 1)], im[size_t(n - 1)], full[size_t(n - 1)],
                             im[size_t(n - 1)]);
        lv.dim = lv.tau.rows;
        if (n >= 2)
            for (int i = 0; i < n; ++i)
                lv.faces.push_back(induced_map(tgt.level(n).faces[size_t(i)], full[size_t(n - 1)],
                                               im[size_t(n - 1)], full[size_t(n - 2)], im[size_t(n - 2)]));
        e.levels.push_back(std::move(lv));
    }
    e.validate();
    return e;
}

Bicomplex cyclic_bicomplex(const CyclicObject& e, int cols, int rows) {
    if (rows > e.n_max()) throw WindowTooSmall("cyclic_bicomplex: built to level " + std::to_string(e.n_max()) +
                                               ", window needs " + std::to_string(rows));
    Bicomplex b;
    b.field = e.field;
    b.ncols = cols;
    b.nrows = rows;
    b.conv = Bicomplex::Convention::commute_with_sign;
    b.dims.assign(size_t(cols), std::vector<idx_t>(size_t(rows), 0));
    b.h.assign(size_t(cols), std::vector<SparseMat>(size_t(rows)));
    b.v.assign(size_t(cols), std::vector<SparseMat>(size_t(rows)));
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j) {
            b.dims[size_t(i)][size_t(j)] = e.dim_at(j + 1);
            if (i >= 1) b.h[size_t(i)][size_t(j)] = i % 2 ? mat_sub(SparseMat::identity(e.field, e.dim_at(j + 1)),
                                                                    e.level(j + 1).tau)
                                                          : e.norm_full(j + 1);
            if (j >= 1) b.v[size_t(i)][size_t(j)] = i % 2 ? e.bprime(j + 1) : e.b(j + 1);
        }
    b.validate();
    return b;
}

std::vector<int64_t> hc_dims(const CyclicObject& e, int n_max_deg) {
    if (e.n_max() < n_max_deg + 2)
        throw WindowTooSmall("hc_dims: degree " + std::to_string(n_max_deg) + " needs levels up to " +
                             std::to_string(n_max_deg + 2));
    Bicomplex b = cyclic_bicomplex(e, n_max_deg + 2, n_max_deg + 2);
    ChainComplex tot = total_complex(b);
    return homology_dims(tot, 0, n_max_deg);
}

ChainMap periodicity_u_chain_map(const CyclicObject& e, int max_degree) {
    Bicomplex b = cyclic_bicomplex(e, max_degree + 2, max_degree + 2);
    ChainComplex tot = total_complex(b);
    ChainMap u;
    u.src = tot;
    u.dst = tot;
    u.shift = -2;
    for (int n = 0; n <= tot.hi(); ++n) {
        SparseMat f(e.field, tot.dim_at(n - 2), tot.dim_at(n));
        TotalLayout src_lay = total_layout(b, n);
        TotalLayout dst_lay = n >= 2 ? total_layout(b, n - 2) : TotalLayout{};
        for (auto& [i, off] : src_lay.cells) {
            if (i < 2) continue;
            for (auto& [di, doff] : dst_lay.cells)
                if (di == i - 2) {
                    idx_t d = b.dims[size_t(i)][size_t(n - i)];
                    for (idx_t k = 0; k < d; ++k) f.col[off + k].push_back({doff + k, 1});
                }
        }
        u.f.push_back(std::move(f));
    }
    u.validate();
    return u;
}

SparseMat periodicity_u_matrix(const CyclicObject& e, int n) {
    ChainMap u = periodicity_u_chain_map(e, n + 3);
    return induced_on_homology(u, n + 2);
}

ConnesCheck connes_exactness(const CyclicObject& e, int n) {
    Bicomplex full = cyclic_bicomplex(e, n + 4, n + 4);
    ChainComplex tot = total_complex(full);
    // the two right-most columns form a subcomplex computing HH
    Bicomplex two = full;
    two.ncols = 2;
    two.dims.resize(2);
    two.h.resize(2);
    two.v.resize(2);
    ChainComplex tot2 = total_complex(two);
    ChainMap incl;
    incl.src = tot2;
    incl.dst = tot;
    incl.shift = 0;
    for (int m = 0; m <= tot2.hi(); ++m) {
        SparseMat f(e.field, tot.dim_at(m), tot2.dim_at(m));
        TotalLayout src_lay = total_layout(two, m);
        TotalLayout dst_lay = total_layout(full, m);
        for (auto& [i, off] : src_lay.cells)
            for (auto& [di, doff] : dst_lay.cells)
                if (di == i)
                    for (idx_t k = 0; k < two.dims[size_t(i)][size_t(m - i)]; ++k)
                        f.col[off + k].push_back({doff + k, 1});
        incl.f.push_back(std::move(f));
    }
    incl.validate();
    ChainMap u = periodicity_u_chain_map(e, n + 2);

    ConnesCheck out;
    out.degree = n;
    std::vector<int64_t> hh = homology_dims(tot2, n + 1, n + 2);
    out.hh_n1 = hh[0];
    out.hh_n2 = hh[1];
    std::vector<int64_t> hc = homology_dims(tot, n, n + 2);
    out.hc_n = hc[0];
    out.hc_n2 = hc[2];
    out.rank_i_n2 = rank(induced_on_homology(incl, n + 2));
    out.rank_i_n1 = rank(induced_on_homology(incl, n + 1));
    out.rank_u = rank(induced_on_homology(u, n + 2));
    // exactness at HC_(n+2): im I = ker u; at HC_n: im u = ker B with
    // rank B forced by exactness at HH_(n+1)
    bool at_hc2 = out.rank_i_n2 + out.rank_u == out.hc_n2;
    bool at_hc0 = out.rank_u + (out.hh_n1 - out.rank_i_n1) == out.hc_n;
    out.exact = at_hc2 && at_hc0;
    return out;
}

HomologyReport hp_stabilized(const CyclicObject& e, int hom_dim_bound) {
    int need_deg = hom_dim_bound + 4;
    if (e.n_max() < need_deg + 2)
        throw WindowTooSmall("hp_stabilized: bound " + std::to_string(hom_dim_bound) + " needs levels up to " +
                             std::to_string(need_deg + 2));
    Bicomplex b = cyclic_bicomplex(e, need_deg + 2, need_deg + 2);
    ChainComplex tot = total_complex(b);

    std::map<int, HomologyAt> hom;
    auto hom_at = [&](int d) -> HomologyAt& {
        auto it = hom.find(d);
        if (it == hom.end()) it = hom.emplace(d, HomologyAt(tot.d(d), tot.d(d + 1))).first;
        return it->second;
    };

    HomologyReport rep;
    rep.kind = "HP";
    rep.object = e.provenance;
    rep.algebra_hash = e.algebra_hash;
    rep.field_p = e.field.p;
    rep.p_cyclic = e.p;
    rep.window_cols = rep.window_rows = need_deg + 2;
    for (int d = 0; d <= need_deg; ++d) rep.dims.push_back(hom_at(d).dim());

    // u must be an isomorphism on [bound, bound+2]
    ChainMap u = periodicity_u_chain_map(e, need_deg);
    for (int n = hom_dim_bound; n <= hom_dim_bound + 2; ++n) {
        HomologyAt& src = hom_at(n + 2);
        HomologyAt& dst = hom_at(n);
        SparseMat m(e.field, idx_t(dst.dim()), idx_t(src.dim()));
        for (size_t k = 0; k < size_t(src.dim()); ++k)
            m.col[k] = dst.class_coords(mat_apply(u.at(n + 2), src.class_rep(k)));
        bool iso = src.dim() == dst.dim() && rank(m) == src.dim();
        if (!iso)
            throw NotStabilized("u: HC_" + std::to_string(n + 2) + " -> HC_" + std::to_string(n) +
                                " is not an isomorphism (dims " + std::to_string(src.dim()) + " -> " +
                                std::to_string(dst.dim()) + ", rank " + std::to_string(rank(m)) + ")");
        rep.notes.push_back("u iso at degree " + std::to_string(n) + " (dim " + std::to_string(dst.dim()) + ")");
    }
    rep.stabilized_from = hom_dim_bound;
    int even_deg = hom_dim_bound % 2 == 0 ? hom_dim_bound : hom_dim_bound + 1;
    int odd_deg = hom_dim_bound % 2 == 0 ? hom_dim_bound + 1 : hom_dim_bound;
    rep.hp_even = rep.dims[size_t(even_deg)];
    rep.hp_odd = rep.dims[size_t(odd_deg)];
    return rep;
}

// --- corrected filtered complexes ---

Bicomplex hs_group_bicomplex(PrimeField f, const SparseMat& tau_gen, int m, int n, int max_total) {
    if (tau_gen.rows != tau_gen.cols) throw NotARepresentation("hs_group_bicomplex: tau not square");
    if (mat_pow(tau_gen, uint64_t(int64_t(m) * n)) != SparseMat::identity(f, tau_gen.rows))
        throw NotARepresentation("hs_group_bicomplex: tau^(mn) != id");
    idx_t dim = tau_gen.rows;
    SparseMat sigma = mat_pow(tau_gen, uint64_t(n));
    SparseMat id = SparseMat::identity(f, dim);
    SparseMat id_minus_sigma = mat_sub(id, sigma);
    SparseMat norm_sigma = geometric_sum(sigma, m);
    SparseMat id_minus_tau = mat_sub(id, tau_gen);
    SparseMat d_tau = geometric_sum(tau_gen, n);

    int cells = max_total + 1;
    Bicomplex b;
    b.field = f;
    b.ncols = b.nrows = cells;
    b.conv = Bicomplex::Convention::anticommute; // signs baked below
    b.dims.assign(size_t(cells), std::vector<idx_t>(size_t(cells), 0));
    b.h.assign(size_t(cells), std::vector<SparseMat>(size_t(cells)));
    b.v.assign(size_t(cells), std::vector<SparseMat>(size_t(cells)));
    b.corr.assign(size_t(cells), std::vector<SparseMat>(size_t(cells)));
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j + i <= max_total; ++j) {
            b.dims[size_t(i)][size_t(j)] = dim;
            if (i >= 1) b.h[size_t(i)][size_t(j)] = i % 2 ? id_minus_sigma : norm_sigma;
            if (j >= 1)
                b.v[size_t(i)][size_t(j)] =
                    mat_scale(j % 2 ? id_minus_tau : d_tau, i % 2 ? -1 : 1);
            if (j >= 2 && i % 2 == 0 && i + 1 + (j - 2) <= max_total)
                b.corr[size_t(i)][size_t(j)] = mat_scale(id, -1);
        }
    total_complex(b).validate();
    return b;
}

// flattened cell (i, J) holds the sub-cells (hs-row j, level [l]) with
// j + l - 1 = J, ordered by increasing j
struct HsLayout {
    std::vector<std::pair<int, idx_t>> subs; // (j, offset)
    idx_t total = 0;
};

static HsLayout hs_layout(const CyclicObject& e, int J) {
    HsLayout out;
    for (int j = 0; j <= J; ++j) {
        int lvl = J - j + 1;
        if (lvl > e.n_max()) continue;
        out.subs.push_back({j, out.total});
        out.total += e.dim_at(lvl);
    }
    return out;
}

Bicomplex hc_hs_bicomplex(const CyclicObject& e, int max_total) {
    if (e.n_max() < max_total + 1)
        throw WindowTooSmall("hc_hs_bicomplex: needs levels up to " + std::to_string(max_total + 1));
    PrimeField f = e.field;
    int cells = max_total + 1;
    Bicomplex b;
    b.field = f;
    b.ncols = b.nrows = cells;
    b.conv = Bicomplex::Convention::anticommute;
    b.dims.assign(size_t(cells), std::vector<idx_t>(size_t(cells), 0));
    b.h.assign(size_t(cells), std::vector<SparseMat>(size_t(cells)));
    b.v.assign(size_t(cells), std::vector<SparseMat>(size_t(cells)));
    b.corr.assign(size_t(cells), std::vector<SparseMat>(size_t(cells)));

    std::vector<HsLayout> lay{size_t(cells)};
    for (int J = 0; J < cells; ++J) lay[size_t(J)] = hs_layout(e, J);

    auto sub_offset = [&](int J, int j) -> int64_t {
        for (auto& [sj, off] : lay[size_t(J)].subs)
            if (sj == j) return off;
        return -1;
    };

    for (int i = 0; i < cells; ++i)
        for (int J = 0; J + i <= max_total; ++J) {
            const HsLayout& L = lay[size_t(J)];
            b.dims[size_t(i)][size_t(J)] = L.total;
            if (L.total == 0) continue;
            // horizontal: blockdiagonal id - sigma / norm_sigma per level
            if (i >= 1) {
                SparseMat h(f, L.total, L.total);
                for (auto& [j, off] : L.subs) {
                    int lvl = J - j + 1;
                    SparseMat blk = i % 2 ? mat_sub(SparseMat::identity(f, e.dim_at(lvl)), e.sigma(lvl))
                                          : e.norm_sigma(lvl);
                    mat_insert_block(h, blk, off, off);
                }
                h.normalize();
                b.h[size_t(i)][size_t(J)] = std::move(h);
            }
            // vertical: B-part (j -> j-1) with sign (-1)^i, bar part
            // (l -> l-1) with sign (-1)^(i+j)
            if (J >= 1) {
                SparseMat v(f, lay[size_t(J - 1)].total, L.total);
                for (auto& [j, off] : L.subs) {
                    int lvl = J - j + 1;
                    if (j >= 1) {
                        int64_t t = sub_offset(J - 1, j - 1);
                        if (t >= 0) {
                            SparseMat blk = j % 2 ? mat_sub(SparseMat::identity(f, e.dim_at(lvl)),
                                                            e.level(lvl).tau)
                                                  : e.norm_partial(lvl);
                            mat_insert_block(v, blk, idx_t(t), off, i % 2 ? -1 : 1);
                        }
                    }
                    if (lvl >= 2) {
                        int64_t t = sub_offset(J - 1, j);
                        if (t >= 0) {
                            SparseMat blk = j % 2 ? e.bprime(lvl) : e.b(lvl);
                            mat_insert_block(v, blk, idx_t(t), off, (i + j) % 2 ? -1 : 1);
                        }
                    }
                }
                v.normalize();
                b.v[size_t(i)][size_t(J)] = std::move(v);
            }
            // correction: -id from (i, J) sub j to (i+1, J-2) sub j-2
            if (i % 2 == 0 && J >= 2 && i + 1 + (J - 2) <= max_total) {
                SparseMat c(f, lay[size_t(J - 2)].total, L.total);
                bool any = false;
                for (auto& [j, off] : L.subs) {
                    if (j < 2) continue;
                    int lvl = J - j + 1;
                    int64_t t = sub_offset(J - 2, j - 2);
                    if (t >= 0) {
                        mat_insert_block(c, SparseMat::identity(f, e.dim_at(lvl)), idx_t(t), off, -1);
                        any = true;
                    }
                }
                if (any) {
                    c.normalize();
                    b.corr[size_t(i)][size_t(J)] = std::move(c);
                }
            }
        }
    total_complex(b).validate();
    return b;
}

static ChainMap hs_shift_map(const CyclicObject& e, const Bicomplex& hs, int max_total, bool shift_rows) {
    ChainComplex tot = total_complex(hs);
    std::vector<HsLayout> lay{size_t(max_total + 1)};
    for (int J = 0; J <= max_total; ++J) lay[size_t(J)] = hs_layout(e, J);
    ChainMap u;
    u.src = tot;
    u.dst = tot;
    u.shift = -2;
    for (int n = 0; n <= tot.hi(); ++n) {
        SparseMat f(e.field, tot.dim_at(n - 2), tot.dim_at(n));
        TotalLayout src_lay = total_layout(hs, n);
        TotalLayout dst_lay = n >= 2 ? total_layout(hs, n - 2) : TotalLayout{};
        auto cell_off = [&](const TotalLayout& l, int i) -> int64_t {
            for (auto& [ci, off] : l.cells)
                if (ci == i) return off;
            return -1;
        };
        for (auto& [i, off] : src_lay.cells) {
            int J = n - i;
            if (!shift_rows) {
                // u: two sigma-columns right, sub-cells unchanged
                if (i < 2) continue;
                int64_t coff = cell_off(dst_lay, i - 2);
                if (coff < 0) continue;
                for (idx_t k = 0; k < hs.dims[size_t(i)][size_t(J)]; ++k)
                    f.col[off + k].push_back({idx_t(coff) + k, 1});
            } else {
                // u': two hs-rows up, (j, l) -> (j-2, l)
                if (J < 2) continue;
                int64_t coff = cell_off(dst_lay, i);
                if (coff < 0) continue;
                for (auto& [j, soff] : lay[size_t(J)].subs) {
                    if (j < 2) continue;
                    int lvl = J - j + 1;
                    int64_t t = -1;
                    for (auto& [tj, toff] : lay[size_t(J - 2)].subs)
                        if (tj == j - 2) t = toff;
                    if (t < 0) continue;
                    for (idx_t k = 0; k < e.dim_at(lvl); ++k)
                        f.col[off + soff + k].push_back({idx_t(coff + t) + k, 1});
                }
            }
        }
        u.f.push_back(std::move(f));
    }
    u.validate();
    return u;
}

ChainMap hs_u_chain_map(const CyclicObject& e, const Bicomplex& hs, int max_total) {
    return hs_shift_map(e, hs, max_total, false);
}

ChainMap hs_uprime_chain_map(const CyclicObject& e, const Bicomplex& hs, int max_total) {
    return hs_shift_map(e, hs, max_total, true);
}

UPrimeCertificate check_uprime_zero(const CyclicObject& e, int max_degree, bool require_zero) {
    int N = max_degree + 1;
    Bicomplex hs = hc_hs_bicomplex(e, N);
    ChainComplex tot = total_complex(hs);
    ChainMap up = hs_uprime_chain_map(e, hs, N);

    std::map<int, HomologyAt> hom;
    auto hom_at = [&](int d) -> HomologyAt& {
        auto it = hom.find(d);
        if (it == hom.end()) it = hom.emplace(d, HomologyAt(tot.d(d), tot.d(d + 1))).first;
        return it->second;
    };

    UPrimeCertificate cert;
    cert.object = e.provenance;
    cert.algebra_hash = e.algebra_hash;
    for (int d = 0; d <= max_degree; ++d) {
        HomologyAt& src = hom_at(d);
        cert.degrees.push_back(d);
        cert.h_dims.push_back(src.dim());
        if (d < 2) {
            cert.is_zero.push_back(true);
            cert.matrices.push_back(SparseMat(e.field, 0, idx_t(src.dim())));
            continue;
        }
        HomologyAt& dst = hom_at(d - 2);
        SparseMat m(e.field, idx_t(dst.dim()), idx_t(src.dim()));
        for (size_t k = 0; k < size_t(src.dim()); ++k)
            m.col[k] = dst.class_coords(mat_apply(up.at(d), src.class_rep(k)));
        bool z = m.is_zero();
        cert.is_zero.push_back(z);
        cert.matrices.push_back(std::move(m));
        if (!z && require_zero)
            throw NonzeroUPrime("u' nonzero on HC_" + std::to_string(d) +
                                "; witness class pivot " + std::to_string(src.class_pivots()[0]));
    }
    return cert;
}

std::pair<int64_t, int64_t> tate_dims(int m, const SparseMat& sigma_rep) {
    if (sigma_rep.rows != sigma_rep.cols) throw NotARepresentation("tate_dims: matrix not square");
    PrimeField f = sigma_rep.field;
    if (mat_pow(sigma_rep, uint64_t(m)) != SparseMat::identity(f, sigma_rep.rows))
        throw NotARepresentation("tate_dims: sigma^m != id");
    SparseMat d_minus = mat_sub(SparseMat::identity(f, sigma_rep.rows), sigma_rep);
    SparseMat d_plus = geometric_sum(sigma_rep, m);
    int64_t rk_minus = rank(d_minus), rk_plus = rank(d_plus);
    int64_t even = int64_t(sigma_rep.rows) - rk_minus - rk_plus;
    int64_t odd = int64_t(sigma_rep.rows) - rk_plus - rk_minus;
    return {even, odd};
}

bool is_free_module(int m, const SparseMat& sigma_rep) {
    if (!PrimeField::is_prime(uint32_t(m)) || uint32_t(m) != sigma_rep.field.p)
        throw NotARepresentation("is_free_module: m must be the (prime) characteristic");
    auto [even, odd] = tate_dims(m, sigma_rep);
    return even == 0 && odd == 0;
}

VanishingCertificate hp_vanishing_check(const CyclicObject& e, int hom_dim_bound) {
    VanishingCertificate cert;
    cert.object = e.provenance;
    cert.algebra_hash = e.algebra_hash;
    cert.p = e.p;
    cert.bound = hom_dim_bound;
    if (e.n_max() < hom_dim_bound + 2)
        throw WindowTooSmall("hp_vanishing_check: bound " + std::to_string(hom_dim_bound) +
                             " needs levels up to " + std::to_string(hom_dim_bound + 2));
    for (int n = 1; n <= e.n_max(); ++n) {
        cert.level_dims.push_back(e.dim_at(n));
        if (e.dim_at(n) == 0) continue;
        if (!is_free_module(e.p, e.sigma(n)))
            throw FreenessFailed("level [" + std::to_string(n) + "] is not free over k[Z/" +
                                 std::to_string(e.p) + "]");
    }
    cert.levels_checked = e.n_max();
    cert.hp_vanishes = true;
    cert.detail = "all levels free over k[Z/p]: Tate rows exact; with the supplied finiteness bound " +
                  std::to_string(hom_dim_bound) + " the Tate bicomplex spectral sequence converges, so HP = 0";
    return cert;
}

} // namespace cyclotome
