#include "cyclotome/algebra.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace cyclotome {

static std::atomic<int64_t> g_budget{2'000'000};
int64_t size_budget() { return g_budget.load(); }
void set_size_budget(int64_t b) { g_budget.store(b); }

int64_t checked_power(int64_t base, int exp, int64_t cap) {
    int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base)
            throw SizeBudgetExceeded("tensor level dim " + std::to_string(base) + "^" + std::to_string(exp) +
                                     " exceeds budget " + std::to_string(cap));
        r *= base;
    }
    return r;
}

void decode_mixed(int64_t index, idx_t dim, int len, std::vector<idx_t>& digits) {
    digits.resize(len);
    for (int k = 0; k < len; ++k) {
        digits[k] = idx_t(index % dim);
        index /= dim;
    }
}

int64_t encode_mixed(const std::vector<idx_t>& digits, idx_t dim) {
    int64_t r = 0;
    for (size_t k = digits.size(); k-- > 0;) r = r * dim + digits[k];
    return r;
}

SparseVec Algebra::mul(const SparseVec& x, const SparseVec& y) const {
    SparseVec acc;
    for (auto& ex : x)
        for (auto& ey : y) acc = vec_axpy(field, acc, field.mul(ex.val, ey.val), mult[ex.row][ey.row]);
    return acc;
}

SparseMat Algebra::left_mult(idx_t i) const {
    SparseMat m(field, dim, dim);
    for (idx_t j = 0; j < dim; ++j) m.col[j] = mult[i][j];
    return m;
}

SparseMat Algebra::right_mult(idx_t i) const {
    SparseMat m(field, dim, dim);
    for (idx_t j = 0; j < dim; ++j) m.col[j] = mult[j][i];
    return m;
}

bool Algebra::is_commutative() const {
    for (idx_t i = 0; i < dim; ++i)
        for (idx_t j = i + 1; j < dim; ++j)
            if (mult[i][j] != mult[j][i]) return false;
    return true;
}

std::string Algebra::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = field.p;
    j["dim"] = dim;
    j["labels"] = labels;
    auto vec_to_json = [](const SparseVec& v) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (auto& e : v) out.push_back({e.row, e.val});
        return out;
    };
    j["unit"] = vec_to_json(unit);
    nlohmann::ordered_json m = nlohmann::ordered_json::array();
    for (idx_t i = 0; i < dim; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (idx_t k = 0; k < dim; ++k) row.push_back(vec_to_json(mult[i][k]));
        m.push_back(row);
    }
    j["mult"] = m;
    if (weights) j["weights"] = *weights;
    return j.dump(1);
}

Algebra Algebra::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Algebra a;
    a.field = PrimeField(j.at("p").get<uint32_t>());
    a.dim = j.at("dim").get<idx_t>();
    a.labels = j.at("labels").get<std::vector<std::string>>();
    auto vec_from = [&](const nlohmann::json& v) {
        SparseVec out;
        for (auto& e : v) out.push_back({e.at(0).get<idx_t>(), a.field.reduce(e.at(1).get<int64_t>())});
        std::sort(out.begin(), out.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        return out;
    };
    a.unit = vec_from(j.at("unit"));
    a.mult.assign(a.dim, std::vector<SparseVec>(a.dim));
    for (idx_t i = 0; i < a.dim; ++i)
        for (idx_t k = 0; k < a.dim; ++k) a.mult[i][k] = vec_from(j.at("mult").at(i).at(k));
    if (j.contains("weights")) a.weights = j.at("weights").get<std::vector<int64_t>>();
    return a;
}

uint64_t Algebra::hash() const {
    std::string s = to_json();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ValidationReport check_algebra(const Algebra& a) {
    ValidationReport rep;
    if (a.dim == 0) {
        rep.violations.push_back("dim must be >= 1");
        return rep;
    }
    // unit law
    for (idx_t i = 0; i < a.dim; ++i) {
        SparseVec ei{{i, 1}};
        if (a.mul(a.unit, ei) != ei) rep.violations.push_back("unit law fails: 1*e" + std::to_string(i));
        if (a.mul(ei, a.unit) != ei) rep.violations.push_back("unit law fails: e" + std::to_string(i) + "*1");
    }
    // associativity on basis triples
    for (idx_t i = 0; i < a.dim; ++i)
        for (idx_t j = 0; j < a.dim; ++j)
            for (idx_t k = 0; k < a.dim; ++k) {
                SparseVec lhs = a.mul(a.mult[i][j], SparseVec{{k, 1}});
                SparseVec rhs = a.mul(SparseVec{{i, 1}}, a.mult[j][k]);
                if (lhs != rhs)
                    rep.violations.push_back("associativity fails at (" + std::to_string(i) + "," +
                                             std::to_string(j) + "," + std::to_string(k) + ")");
            }
    // grading
    if (a.weights) {
        const auto& w = *a.weights;
        for (idx_t i = 0; i < a.dim; ++i)
            for (idx_t j = 0; j < a.dim; ++j)
                for (auto& e : a.mult[i][j])
                    if (w[e.row] != w[i] + w[j])
                        rep.violations.push_back("grading fails at (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ")");
    }
    return rep;
}

ValidationReport check_bimodule(const Algebra& a, const Bimodule& m) {
    ValidationReport rep;
    SparseMat idm = SparseMat::identity(a.field, m.dim);
    auto act = [&](const std::vector<SparseMat>& side, const SparseVec& x) {
        SparseMat out(a.field, m.dim, m.dim);
        for (auto& e : x) out = mat_add(out, mat_scale(side[e.row], e.val));
        return out;
    };
    if (act(m.left, a.unit) != idm) rep.violations.push_back("left action not unital");
    if (act(m.right, a.unit) != idm) rep.violations.push_back("right action not unital");
    for (idx_t i = 0; i < a.dim; ++i)
        for (idx_t j = 0; j < a.dim; ++j) {
            if (mat_mul(m.left[i], m.left[j]) != act(m.left, a.mult[i][j]))
                rep.violations.push_back("left action not associative at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            if (mat_mul(m.right[j], m.right[i]) != act(m.right, a.mult[i][j]))
                rep.violations.push_back("right action not associative at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            if (mat_mul(m.left[i], m.right[j]) != mat_mul(m.right[j], m.left[i]))
                rep.violations.push_back("left and right actions do not commute at (" + std::to_string(i) +
                                         "," + std::to_string(j) + ")");
        }
    return rep;
}

Algebra group_algebra(const std::vector<std::vector<int>>& table, PrimeField field,
                      const std::vector<std::string>& names) {
    int n = int(table.size());
    if (n == 0) throw NotAGroup("empty table");
    for (auto& row : table) {
        if (int(row.size()) != n) throw NotAGroup("table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw NotAGroup("table entry out of range");
    }
    // identity
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j) ok = ok && table[i][j] == j && table[j][i] == j;
        if (ok) e = i;
    }
    if (e < 0) throw NotAGroup("no identity element");
    // associativity
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw NotAGroup("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                                    "," + std::to_string(k) + ")");
    // inverses
    for (int i = 0; i < n; ++i) {
        bool has = false;
        for (int j = 0; j < n; ++j) has = has || table[i][j] == e;
        if (!has) throw NotAGroup("element " + std::to_string(i) + " has no inverse");
    }
    Algebra a;
    a.field = field;
    a.dim = idx_t(n);
    for (int i = 0; i < n; ++i)
        a.labels.push_back(i < int(names.size()) ? names[i] : (i == e ? "e" : "g" + std::to_string(i)));
    a.unit = {{idx_t(e), 1}};
    a.mult.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.mult[i][j] = {{idx_t(table[i][j]), 1}};
    return a;
}

Algebra matrix_algebra(int n, PrimeField field) {
    if (n < 1) throw UsageError("matrix_algebra: n must be >= 1");
    Algebra a;
    a.field = field;
    a.dim = idx_t(n * n);
    a.mult.assign(a.dim, std::vector<SparseVec>(a.dim));
    auto id = [n](int i, int j) { return idx_t(i * n + j); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a.labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
            a.unit.push_back({id(i, i), 1});
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (j == k) a.mult[id(i, j)][id(k, l)] = {{id(i, l), 1}};
        }
    // unit accumulated one diagonal entry per i; dedupe
    std::sort(a.unit.begin(), a.unit.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
    a.unit.erase(std::unique(a.unit.begin(), a.unit.end()), a.unit.end());
    return a;
}

Algebra truncated_polynomial(int nvars, int cap, PrimeField field) {
    if (nvars < 1 || cap < 1) throw UsageError("truncated_polynomial: nvars and cap must be >= 1");
    // monomial basis of total degree < cap, ordered by (degree, lex)
    std::vector<std::vector<int>> mons;
    std::vector<int> cur(nvars, 0);
    std::function<void(int, int)> gen = [&](int pos, int deg) {
        if (pos == nvars) {
            mons.push_back(cur);
            return;
        }
        for (int d = 0; deg + d < cap; ++d) {
            cur[pos] = d;
            gen(pos + 1, deg + d);
        }
        cur[pos] = 0;
    };
    gen(0, 0);
    std::stable_sort(mons.begin(), mons.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
        int dx = std::accumulate(x.begin(), x.end(), 0), dy = std::accumulate(y.begin(), y.end(), 0);
        if (dx != dy) return dx < dy;
        return x < y;
    });
    std::map<std::vector<int>, idx_t> index;
    for (size_t i = 0; i < mons.size(); ++i) index[mons[i]] = idx_t(i);

    auto label = [&](const std::vector<int>& m) {
        static const char* vars = "xyzw";
        std::string s;
        for (int v = 0; v < nvars; ++v) {
            if (m[v] == 0) continue;
            s += vars[v % 4];
            if (m[v] > 1) s += "^" + std::to_string(m[v]);
        }
        return s.empty() ? std::string("1") : s;
    };

    Algebra a;
    a.field = field;
    a.dim = idx_t(mons.size());
    a.weights = std::vector<int64_t>();
    for (auto& m : mons) {
        a.labels.push_back(label(m));
        a.weights->push_back(std::accumulate(m.begin(), m.end(), 0));
    }
    a.unit = {{index.at(std::vector<int>(nvars, 0)), 1}};
    a.mult.assign(a.dim, std::vector<SparseVec>(a.dim));
    for (size_t i = 0; i < mons.size(); ++i)
        for (size_t j = 0; j < mons.size(); ++j) {
            std::vector<int> s(nvars);
            int deg = 0;
            for (int v = 0; v < nvars; ++v) deg += (s[v] = mons[i][v] + mons[j][v]);
            if (deg < cap) a.mult[i][j] = {{index.at(s), 1}};
        }
    return a;
}

Algebra field_as_algebra(PrimeField field) {
    Algebra a;
    a.field = field;
    a.dim = 1;
    a.labels = {"1"};
    a.unit = {{0, 1}};
    a.mult = {{SparseVec{{0, 1}}}};
    return a;
}

std::pair<Algebra, CyclicSymmetry> tensor_power(const Algebra& a, int p) {
    if (p < 1) throw UsageError("tensor_power: p must be >= 1");
    int64_t dim = checked_power(a.dim, p, size_budget());
    // materializing the full structure tensor costs dim^2 coefficient vectors
    if (dim > 4096)
        throw SizeBudgetExceeded("tensor_power: refusing to materialize mult table of dim " +
                                 std::to_string(dim));
    Algebra t;
    t.field = a.field;
    t.dim = idx_t(dim);
    std::vector<idx_t> di, dj;
    for (int64_t i = 0; i < dim; ++i) {
        decode_mixed(i, a.dim, p, di);
        std::string lab = a.labels[di[0]];
        for (int k = 1; k < p; ++k) lab += "(x)" + a.labels[di[k]];
        t.labels.push_back(lab);
    }
    // unit = unit tensor unit ... ; expand the product of sparse vectors
    std::function<void(int, int64_t, uint32_t, const std::vector<const SparseVec*>&, SparseVec&)> expand =
        [&](int k, int64_t idx, uint32_t coef, const std::vector<const SparseVec*>& factors, SparseVec& out) {
            if (k < 0) {
                out.push_back({idx_t(idx), coef});
                return;
            }
            for (auto& e : *factors[k]) expand(k - 1, idx * a.dim + e.row, a.field.mul(coef, e.val), factors, out);
        };
    {
        std::vector<const SparseVec*> us(p, &a.unit);
        SparseVec u;
        expand(p - 1, 0, 1, us, u);
        std::sort(u.begin(), u.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        t.unit = u;
    }
    t.mult.assign(t.dim, std::vector<SparseVec>(t.dim));
    for (int64_t i = 0; i < dim; ++i) {
        decode_mixed(i, a.dim, p, di);
        for (int64_t j = 0; j < dim; ++j) {
            decode_mixed(j, a.dim, p, dj);
            std::vector<const SparseVec*> factors(p);
            for (int k = 0; k < p; ++k) factors[k] = &a.mult[di[k]][dj[k]];
            SparseVec out;
            expand(p - 1, 0, 1, factors, out);
            std::sort(out.begin(), out.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
            t.mult[i][j] = out;
        }
    }
    if (a.weights) {
        t.weights = std::vector<int64_t>();
        for (int64_t i = 0; i < dim; ++i) {
            decode_mixed(i, a.dim, p, di);
            int64_t w = 0;
            for (int k = 0; k < p; ++k) w += (*a.weights)[di[k]];
            t.weights->push_back(w);
        }
    }
    // sigma shifts factor contents up by one slot: digit j of the image is
    // digit j-1 of the source
    CyclicSymmetry sym;
    sym.order = idx_t(p);
    sym.perm = SparseMat(a.field, t.dim, t.dim);
    std::vector<idx_t> dd;
    for (int64_t i = 0; i < dim; ++i) {
        decode_mixed(i, a.dim, p, di);
        dd.resize(p);
        for (int k = 0; k < p; ++k) dd[(k + 1) % p] = di[k];
        sym.perm.col[i].push_back({idx_t(encode_mixed(dd, a.dim)), 1});
    }
    return {std::move(t), std::move(sym)};
}

Bimodule diagonal_bimodule(const Algebra& a) {
    Bimodule m;
    m.dim = a.dim;
    for (idx_t i = 0; i < a.dim; ++i) {
        m.left.push_back(a.left_mult(i));
        m.right.push_back(a.right_mult(i));
    }
    return m;
}

Bimodule twisted_diagonal_bimodule(const Algebra& a, int p) {
    if (p < 1) throw UsageError("twisted_diagonal_bimodule: p must be >= 1");
    auto [t, sym] = tensor_power(a, p);
    Bimodule m;
    m.dim = t.dim;
    for (idx_t i = 0; i < t.dim; ++i) m.left.push_back(t.left_mult(i));
    // right action of c is right multiplication by sigma(c)
    for (idx_t i = 0; i < t.dim; ++i) {
        idx_t si = sym.perm.col[i][0].row;
        m.right.push_back(t.right_mult(si));
    }
    ValidationReport rep = check_bimodule(t, m);
    if (!rep.ok()) throw ValidationFailed("twisted_diagonal_bimodule: " + rep.violations.front());
    return m;
}

Algebra frobenius_twist(const Algebra& a) {
    // over F_p the twist is the identity functor; only labels change
    Algebra t = a;
    for (auto& l : t.labels) {
        const std::string suffix = "^(1)";
        if (l.size() < suffix.size() || l.compare(l.size() - suffix.size(), suffix.size(), suffix) != 0)
            l += suffix;
    }
    return t;
}

std::vector<std::vector<int>> cyclic_group_table(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return t;
}

std::vector<std::vector<int>> symmetric_group_table(int n) {
    // elements = permutations of n letters in lexicographic order
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    int m = int(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < m; ++i) index[perms[i]] = i;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<int> comp(n);
            for (int k = 0; k < n; ++k) comp[k] = perms[i][perms[j][k]];
            t[i][j] = index.at(comp);
        }
    return t;
}

} // namespace cyclotome
