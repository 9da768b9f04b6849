#include "cyclotome/lambda.hpp"

#include <functional>
#include <sstream>

namespace cyclotome {

int64_t LambdaMorphism::eval(int64_t a) const {
    int64_t q = a >= 0 ? a / n : -((-a + n - 1) / n);
    int64_t r = a - q * n;
    return values[size_t(r)] + q * m;
}

void LambdaMorphism::validate() const {
    if (p < 1 || n < 1 || m < 1 || int(values.size()) != n)
        throw UsageError("LambdaMorphism: bad shape");
    for (int i = 0; i + 1 < n; ++i)
        if (values[i] > values[i + 1]) throw UsageError("LambdaMorphism: not monotone");
    if (values[n - 1] > values[0] + m) throw UsageError("LambdaMorphism: not equivariant-monotone");
    if (values[0] < 0 || values[0] >= int64_t(p) * m) throw UsageError("LambdaMorphism: not normalized");
}

std::string LambdaMorphism::str() const {
    std::ostringstream os;
    os << "p=" << p << " [" << n << "]->[" << m << "] : ";
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << values[i];
    return os.str();
}

static LambdaMorphism normalized(int p, int n, int m, std::vector<int64_t> vals) {
    int64_t period = int64_t(p) * m;
    int64_t shift = vals[0] >= 0 ? (vals[0] / period) * period : -(((-vals[0] + period - 1) / period) * period);
    for (auto& v : vals) v -= shift;
    LambdaMorphism f{p, n, m, std::move(vals)};
    f.validate();
    return f;
}

LambdaMorphism lambda_identity(int p, int n) {
    std::vector<int64_t> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return normalized(p, n, n, std::move(v));
}

LambdaMorphism lambda_tau(int p, int n) {
    std::vector<int64_t> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return normalized(p, n, n, std::move(v));
}

LambdaMorphism lambda_sigma(int p, int n) {
    std::vector<int64_t> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + n;
    return normalized(p, n, n, std::move(v));
}

LambdaMorphism lambda_face(int p, int n, int i) {
    if (n < 2 || i < 0 || i > n - 1) throw UsageError("lambda_face: bad index");
    std::vector<int64_t> v(n);
    if (i == n - 1) {
        for (int b = 0; b < n; ++b) v[b] = b; // wrap face: identity window values
    } else {
        for (int b = 0; b < n; ++b) v[b] = b <= i ? b : b - 1;
    }
    return normalized(p, n, n - 1, std::move(v));
}

LambdaMorphism parse_lambda(const std::string& text) {
    // grammar: "p=<int> [<n>]->[<m>] : v0,v1,..."
    std::istringstream is(text);
    std::string tok;
    int p, n, m;
    char c;
    if (!(is >> tok) || tok.rfind("p=", 0) != 0) throw UsageError("parse_lambda: expected p=<int>");
    p = std::stoi(tok.substr(2));
    if (!(is >> c) || c != '[' || !(is >> n) || !(is >> c) || c != ']') throw UsageError("parse_lambda: expected [n]");
    if (!(is >> c) || c != '-' || !(is >> c) || c != '>') throw UsageError("parse_lambda: expected ->");
    if (!(is >> c) || c != '[' || !(is >> m) || !(is >> c) || c != ']') throw UsageError("parse_lambda: expected [m]");
    if (!(is >> c) || c != ':') throw UsageError("parse_lambda: expected :");
    std::vector<int64_t> vals;
    int64_t v;
    while (is >> v) {
        vals.push_back(v);
        is >> c; // comma
    }
    if (int(vals.size()) != n) throw UsageError("parse_lambda: expected " + std::to_string(n) + " values");
    return normalized(p, n, m, std::move(vals));
}

LambdaMorphism compose(const LambdaMorphism& g, const LambdaMorphism& f) {
    if (f.m != g.n || f.p != g.p) throw SourceTargetMismatch("compose: " + g.str() + " after " + f.str());
    std::vector<int64_t> v(f.n);
    for (int a = 0; a < f.n; ++a) v[a] = g.eval(f.values[a]);
    return normalized(f.p, f.n, g.m, std::move(v));
}

LambdaMorphism lambda_pow(const LambdaMorphism& f, int64_t e) {
    if (f.n != f.m) throw SourceTargetMismatch("lambda_pow: not an endomorphism");
    LambdaMorphism r = lambda_identity(f.p, f.n);
    for (int64_t i = 0; i < e; ++i) r = compose(f, r);
    return r;
}

std::pair<int64_t, LambdaMorphism> normal_form(const LambdaMorphism& f) {
    int64_t j = f.values[0];
    std::vector<int64_t> v(f.values);
    for (auto& x : v) x -= j;
    LambdaMorphism f0{f.p, f.n, f.m, std::move(v)};
    f0.validate();
    return {j, f0};
}

std::vector<LambdaMorphism> hom_enumerate(int p, int n, int m) {
    // f(0) in [0, pm); the rest monotone with f(n-1) <= f(0) + m
    std::vector<LambdaMorphism> out;
    std::vector<int64_t> v(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(LambdaMorphism{p, n, m, v});
            return;
        }
        for (int64_t x = v[i - 1]; x <= v[0] + m; ++x) {
            v[i] = x;
            rec(i + 1);
        }
    };
    for (int64_t f0 = 0; f0 < int64_t(p) * m; ++f0) {
        v[0] = f0;
        if (n == 1)
            out.push_back(LambdaMorphism{p, n, m, v});
        else
            rec(1);
        if (int64_t(out.size()) > size_budget()) throw SizeBudgetExceeded("hom_enumerate");
    }
    for (auto& f : out) f.validate();
    return out;
}

LambdaMorphism functor_i(const LambdaMorphism& f) {
    std::vector<int64_t> v(size_t(f.p) * f.n);
    for (size_t a = 0; a < v.size(); ++a) v[a] = f.eval(int64_t(a));
    return normalized(1, f.p * f.n, f.p * f.m, std::move(v));
}

LambdaMorphism functor_pi(const LambdaMorphism& f) {
    return normalized(1, f.n, f.m, f.values);
}

SparseMat linearize_A_sharp(const Algebra& a, const LambdaMorphism& f) {
    LambdaMorphism F = f.p == 1 ? f : functor_i(f); // integer map on [pn] -> [pm]
    int N = F.n, M = F.m;
    int64_t src_dim = checked_power(a.dim, N, size_budget());
    int64_t dst_dim = checked_power(a.dim, M, size_budget());

    // preimage interval of each integer value in [F(0), F(0)+M)
    int64_t v0 = F.values[0];
    std::vector<std::vector<int>> preim(M); // target slot (j mod M) -> source slots, increasing
    for (int64_t j = v0; j < v0 + M; ++j) {
        // integer preimages of j form an interval of length <= N
        std::vector<int> run;
        for (int64_t x = -N; x < 2 * N; ++x)
            if (F.eval(x) == j) run.push_back(int(x));
        // dedupe residues while preserving run order
        std::vector<int> ordered;
        for (int x : run) {
            int r = ((x % N) + N) % N;
            bool seen = false;
            for (int y : ordered) seen = seen || y == r;
            if (!seen) ordered.push_back(r);
        }
        preim[size_t(((j % M) + M) % M)] = ordered;
    }

    // sign: f = tau^j o f0 with tau at Lambda_p-level [m] carrying (-1)^(m-1);
    // for p odd this equals the total-length rule (-1)^(pm-1), and only the
    // level rule keeps the face/tau/sigma relations exact for every p and
    // characteristic
    auto [shift, f0] = normal_form(F);
    uint32_t sign = ((f.m - 1) * shift) % 2 == 0 ? 1 : a.field.neg(1);

    SparseMat out(a.field, idx_t(dst_dim), idx_t(src_dim));
    std::vector<idx_t> digits;
    std::vector<SparseVec> slot_val(M);
    std::function<void(int, int64_t, uint32_t, SparseVec&)> expand = [&](int k, int64_t idx, uint32_t coef,
                                                                         SparseVec& dst) {
        if (k < 0) {
            dst.push_back({idx_t(idx), coef});
            return;
        }
        for (auto& e : slot_val[k]) expand(k - 1, idx * a.dim + e.row, a.field.mul(coef, e.val), dst);
    };
    for (int64_t s = 0; s < src_dim; ++s) {
        decode_mixed(s, a.dim, N, digits);
        bool dead = false;
        for (int j = 0; j < M && !dead; ++j) {
            SparseVec acc = a.unit;
            for (int slot : preim[j]) {
                acc = a.mul(acc, SparseVec{{digits[size_t(slot)], 1}});
                if (acc.empty()) break;
            }
            if (acc.empty()) dead = true;
            slot_val[j] = std::move(acc);
        }
        if (dead) continue;
        SparseVec col;
        expand(M - 1, 0, sign, col);
        std::sort(col.begin(), col.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        out.col[s] = std::move(col);
    }
    return out;
}

} // namespace cyclotome
