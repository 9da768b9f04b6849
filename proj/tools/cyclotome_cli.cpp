#include "CLI11.hpp"

#include "cyclotome/bar.hpp"
#include "cyclotome/builtins.hpp"
#include "cyclotome/cache.hpp"
#include "cyclotome/cartier.hpp"
#include "cyclotome/derham.hpp"
#include "cyclotome/lambda.hpp"
#include "cyclotome/pool.hpp"
#include "cyclotome/report.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace cyclotome;

namespace {

struct CommonOpts {
    std::string algebra;
    std::optional<uint32_t> field;
    int p = 1;
    int nmax = 4;
    int bound = 0;
    int weight_cap = 6;
    int window = -1;
    std::string format = "text";
    std::string output;
    std::string cache_dir;
    int jobs = 0;
    int64_t budget = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_algebra = true) {
    if (with_algebra) cmd->add_option("--algebra", o.algebra, "builtin:<name> or a JSON algebra file");
    cmd->add_option("--field", o.field, "override the coefficient field F_p");
    cmd->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", o.output, "write the report here instead of stdout");
    cmd->add_option("--cache-dir", o.cache_dir, "level-matrix cache directory (default $CYCLOTOME_CACHE)");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--budget", o.budget, "tensor-level size budget (basis elements)");
}

Algebra load_algebra(const CommonOpts& o) {
    if (o.algebra.empty()) throw UsageError("--algebra is required");
    if (o.algebra.rfind("builtin:", 0) == 0) return builtin_algebra(o.algebra, o.field);
    std::ifstream in(o.algebra);
    if (!in) throw UsageError("cannot open algebra file " + o.algebra);
    std::stringstream ss;
    ss << in.rdbuf();
    Algebra a = Algebra::from_json(ss.str());
    ValidationReport rep = check_algebra(a);
    if (!rep.ok()) throw ValidationFailed("algebra file invalid: " + rep.violations.front());
    return a;
}

void apply_common(const CommonOpts& o) {
    if (!o.cache_dir.empty()) set_global_cache_dir(o.cache_dir);
    if (o.jobs > 0) job_count() = o.jobs;
    if (o.budget > 0) set_size_budget(o.budget);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    out << text;
}

std::string algebra_display(const CommonOpts& o, const Algebra& a) {
    return o.algebra + "/F_" + std::to_string(a.field.p);
}

int run_command(const std::vector<std::string>& args);

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"cyclotome: exact homological-algebra workbench over prime fields"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* cmd_catalog = app.add_subcommand("catalog", "list the builtin algebras");
    add_common(cmd_catalog, o, false);

    auto* cmd_check = app.add_subcommand("check-algebra", "validate structure constants");
    add_common(cmd_check, o);

    auto* cmd_hh = app.add_subcommand("hh", "Hochschild homology dims (with --p >= 2: twisted-diagonal route)");
    add_common(cmd_hh, o);
    cmd_hh->add_option("--p", o.p, "tensor-power order");
    cmd_hh->add_option("--nmax", o.nmax, "degrees 0..nmax-1");

    auto* cmd_hc = app.add_subcommand("hc", "cyclic homology dims");
    add_common(cmd_hc, o);
    cmd_hc->add_option("--p", o.p, "p-cyclic model (1 = ordinary)");
    cmd_hc->add_option("--nmax", o.nmax, "top degree");
    cmd_hc->add_option("--window", o.window, "explicit window size (default nmax+2)");

    auto* cmd_hp = app.add_subcommand("hp", "periodic cyclic homology via stabilization");
    add_common(cmd_hp, o);
    cmd_hp->add_option("--p", o.p, "p-cyclic model");
    cmd_hp->add_option("--bound", o.bound, "homological-dimension bound");

    auto* cmd_tate = app.add_subcommand("tate", "Tate homology of sigma on A^(x)p, and freeness");
    add_common(cmd_tate, o);
    cmd_tate->add_option("--p", o.p, "cyclic group order")->required();

    auto* cmd_id = app.add_subcommand("identities", "square-zero and cyclic-operator identities");
    add_common(cmd_id, o);
    cmd_id->add_option("--p", o.p, "p-fold variant");
    cmd_id->add_option("--nmax", o.nmax, "levels");

    auto* cmd_lambda = app.add_subcommand("lambda", "cyclic-category calculator");
    add_common(cmd_lambda, o, false);
    std::string lop, lf, lg;
    int ln = 1, lm = 1, lp = 1;
    cmd_lambda->add_option("--op", lop, "enumerate|compose|normal-form|linearize")->required();
    cmd_lambda->add_option("--f", lf, "morphism literal, e.g. \"p=2 [2]->[1] : 0,0\"");
    cmd_lambda->add_option("--g", lg, "second morphism (for compose: g after f)");
    cmd_lambda->add_option("--p", lp);
    cmd_lambda->add_option("--n", ln);
    cmd_lambda->add_option("--m", lm);
    cmd_lambda->add_option("--algebra", o.algebra, "algebra for linearize");

    auto* cmd_qf = app.add_subcommand("qf", "quasi-Frobenius maps: validate or search");
    add_common(cmd_qf, o);
    std::string qf_group_name, qf_mode = "group";
    int qf_dimv = 1;
    cmd_qf->add_option("--mode", qf_mode, "group|free|search");
    cmd_qf->add_option("--group", qf_group_name, "group name (Z2, Z3, Z4, S3)");
    cmd_qf->add_option("--p", o.p, "p");
    cmd_qf->add_option("--dimv", qf_dimv, "generators of T(V) (mode free)");
    cmd_qf->add_option("--weight-cap", o.weight_cap);

    auto* cmd_cartier = app.add_subcommand("cartier", "Cartier isomorphism certificates");
    add_common(cmd_cartier, o);
    std::string cartier_mode = "verify";
    int nvars = 1;
    cmd_cartier->add_option("--mode", cartier_mode, "verify|commutative");
    cmd_cartier->add_option("--p", o.p, "p = char k");
    cmd_cartier->add_option("--bound", o.bound, "homological-dimension bound");
    cmd_cartier->add_option("--nmax", o.nmax, "levels (default bound+6)");
    cmd_cartier->add_option("--nvars", nvars, "variables (mode commutative)");
    cmd_cartier->add_option("--weight-cap", o.weight_cap);

    auto* cmd_derham = app.add_subcommand("derham", "de Rham cohomology of polynomial slices");
    add_common(cmd_derham, o, false);
    uint32_t dr_char = 2;
    int dr_nvars = 1;
    cmd_derham->add_option("--nvars", dr_nvars)->required();
    cmd_derham->add_option("--char", dr_char, "characteristic (0 = rationals)")->required();
    cmd_derham->add_option("--weight-cap", o.weight_cap);

    auto* cmd_deg = app.add_subcommand("degeneration", "Hodge-to-de-Rham degeneration bookkeeping");
    add_common(cmd_deg, o);
    std::string deg_mode = "algebra";
    cmd_deg->add_option("--mode", deg_mode, "algebra|charp|char0");
    cmd_deg->add_option("--nmax", o.nmax, "top total degree");
    cmd_deg->add_option("--weight-cap", o.weight_cap);
    uint32_t deg_p = 3;
    cmd_deg->add_option("--p", deg_p, "characteristic for mode charp");

    auto* cmd_uprime = app.add_subcommand("uprime", "induced matrix of u' on HC (zero when p = char k)");
    add_common(cmd_uprime, o);
    cmd_uprime->add_option("--p", o.p)->required();
    cmd_uprime->add_option("--nmax", o.nmax, "top degree checked");
    bool uprime_assert = false;
    cmd_uprime->add_flag("--assert-zero", uprime_assert, "fail with NonzeroUPrime on a nonzero matrix");

    auto* cmd_verify = app.add_subcommand("verify", "re-run a job and compare against a stored report");
    std::string expected_path;
    cmd_verify->add_option("--expected", expected_path, "stored report")->required();
    cmd_verify->allow_extras(); // everything else is the original job's argv

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e); // prints help or the usage error; 0 for --help
    }
    apply_common(o);

    if (app.got_subcommand(cmd_catalog)) {
        std::ostringstream os;
        if (o.format == "json") {
            os << "[\n";
            bool first = true;
            for (auto& e : builtin_catalog()) {
                os << (first ? " " : ",") << "{\"name\":\"" << e.name << "\",\"field\":" << e.default_p
                   << ",\"provenance\":\"" << e.provenance << "\"}\n";
                first = false;
            }
            os << "]\n";
        } else {
            os << artifact_version() << " catalog\n";
            for (auto& e : builtin_catalog()) os << e.name << " (F_" << e.default_p << "): " << e.provenance << "\n";
        }
        emit(o, os.str());
        return 0;
    }
    if (app.got_subcommand(cmd_check)) {
        Algebra a = load_algebra(o);
        ValidationReport rep = check_algebra(a);
        std::ostringstream os;
        os << artifact_version() << " check-algebra\nalgebra: " << algebra_display(o, a) << "\ndim: " << a.dim
           << "\nhash: " << std::hex << a.hash() << std::dec << "\n";
        if (rep.ok())
            os << "valid: yes\n";
        else {
            os << "valid: no\n";
            for (auto& v : rep.violations) os << "violation: " << v << "\n";
        }
        emit(o, os.str());
        return rep.ok() ? 0 : 2;
    }
    if (app.got_subcommand(cmd_hh)) {
        Algebra a = load_algebra(o);
        HomologyReport rep;
        rep.kind = "HH";
        rep.object = o.p >= 2 ? "bar(A^(x)p, twisted diagonal)" : "bar(A, A)";
        rep.algebra_hash = a.hash();
        rep.field_p = a.field.p;
        rep.p_cyclic = o.p;
        rep.window_cols = 1;
        rep.window_rows = o.nmax + 1;
        if (o.p >= 2) {
            auto [t, sym] = tensor_power(a, o.p);
            Bimodule tw = twisted_diagonal_bimodule(a, o.p);
            rep.dims = hh_dims(t, tw, o.nmax);
            rep.notes.push_back("computed from the twisted diagonal bimodule");
        } else {
            rep.dims = hh_dims(a, o.nmax);
        }
        emit(o, render_homology_report(rep, o.format));
        return 0;
    }
    if (app.got_subcommand(cmd_hc)) {
        Algebra a = load_algebra(o);
        CyclicObject e = o.p >= 2 ? i_star_a_sharp(a, o.p, o.nmax + 2) : a_sharp(a, o.nmax + 2);
        HomologyReport rep;
        rep.kind = "HC";
        rep.object = e.provenance;
        rep.algebra_hash = a.hash();
        rep.field_p = a.field.p;
        rep.p_cyclic = o.p;
        rep.window_cols = rep.window_rows = o.window > 0 ? o.window : o.nmax + 2;
        rep.dims = hc_dims(e, o.nmax);
        emit(o, render_homology_report(rep, o.format));
        return 0;
    }
    if (app.got_subcommand(cmd_hp)) {
        Algebra a = load_algebra(o);
        CyclicObject e = o.p >= 2 ? i_star_a_sharp(a, o.p, o.bound + 6) : a_sharp(a, o.bound + 6);
        HomologyReport rep = hp_stabilized(e, o.bound); // NotStabilized names the failing degree
        emit(o, render_homology_report(rep, o.format));
        return 0;
    }
    if (app.got_subcommand(cmd_tate)) {
        Algebra a = load_algebra(o);
        auto [t, sym] = tensor_power(a, o.p);
        auto [even, odd] = tate_dims(o.p, sym.perm);
        std::ostringstream os;
        os << artifact_version() << " tate\nalgebra: " << algebra_display(o, a) << "\nm: " << o.p
           << "\neven: " << even << "\nodd: " << odd << "\n";
        if (a.field.p == uint32_t(o.p))
            os << "free-module: " << (is_free_module(o.p, sym.perm) ? "yes" : "no") << "\n";
        emit(o, os.str());
        return 0;
    }
    if (app.got_subcommand(cmd_id)) {
        Algebra a = load_algebra(o);
        std::ostringstream os;
        os << artifact_version() << " identities\nalgebra: " << algebra_display(o, a) << "\np: " << o.p
           << "\nlevels: up to " << o.nmax << "\n";
        bool all_ok = true;
        for (int n = 2; n <= o.nmax; ++n) {
            SparseMat b1, bp1;
            if (o.p == 1) {
                b1 = b_matrix_cyclic(a, n);
                bp1 = bprime_matrix_cyclic(a, n);
            } else {
                std::tie(b1, bp1) = p_differentials(a, o.p, n);
            }
            SparseMat tau_src = o.p == 1 ? tau_matrix(a, n, true) : p_tau_matrix(a, o.p, n, true);
            SparseMat tau_dst = o.p == 1 ? tau_matrix(a, n - 1, true) : p_tau_matrix(a, o.p, n - 1, true);
            SparseMat id_src = SparseMat::identity(a.field, tau_src.rows);
            SparseMat id_dst = SparseMat::identity(a.field, tau_dst.rows);
            bool first = mat_mul(mat_sub(id_dst, tau_dst), bp1) == mat_mul(b1, mat_sub(id_src, tau_src));
            SparseMat nd(a.field, tau_dst.rows, tau_dst.rows), pw = id_dst;
            for (int k = 0; k < o.p * (n - 1); ++k) {
                nd = mat_add(nd, pw);
                pw = mat_mul(tau_dst, pw);
            }
            SparseMat ns(a.field, tau_src.rows, tau_src.rows);
            pw = id_src;
            for (int k = 0; k < o.p * n; ++k) {
                ns = mat_add(ns, pw);
                pw = mat_mul(tau_src, pw);
            }
            bool second = mat_mul(nd, b1) == mat_mul(bp1, ns);
            all_ok = all_ok && first && second;
            os << "level " << n << ": (id - tau) b' = b (id - tau): " << (first ? "ok" : "FAIL")
               << "; norm b = b' norm: " << (second ? "ok" : "FAIL") << "\n";
            if (n >= 3) {
                SparseMat b0 = o.p == 1 ? b_matrix_cyclic(a, n - 1) : p_differentials(a, o.p, n - 1).first;
                SparseMat q0 = o.p == 1 ? bprime_matrix_cyclic(a, n - 1) : p_differentials(a, o.p, n - 1).second;
                bool sq1 = mat_mul(b0, b1).is_zero(), sq2 = mat_mul(q0, bp1).is_zero();
                all_ok = all_ok && sq1 && sq2;
                os << "level " << n << ": b b = 0: " << (sq1 ? "ok" : "FAIL") << "; b' b' = 0: "
                   << (sq2 ? "ok" : "FAIL") << "\n";
            }
        }
        emit(o, os.str());
        return all_ok ? 0 : 2;
    }
    if (app.got_subcommand(cmd_lambda)) {
        std::ostringstream os;
        if (lop == "enumerate") {
            auto homs = hom_enumerate(lp, ln, lm);
            os << "count: " << homs.size() << "\n";
            for (auto& f : homs) os << f.str() << "\n";
        } else if (lop == "compose") {
            LambdaMorphism f = parse_lambda(lf), g = parse_lambda(lg);
            os << compose(g, f).str() << "\n";
        } else if (lop == "normal-form") {
            auto [j, f0] = normal_form(parse_lambda(lf));
            os << "j: " << j << "\nf0: " << f0.str() << "\n";
        } else if (lop == "linearize") {
            Algebra a = load_algebra(o);
            SparseMat m = linearize_A_sharp(a, parse_lambda(lf));
            write_triples(os, m);
        } else {
            throw UsageError("lambda: unknown --op " + lop);
        }
        emit(o, os.str());
        return 0;
    }
    if (app.got_subcommand(cmd_qf)) {
        std::ostringstream os;
        os << artifact_version() << " qf\n";
        if (qf_mode == "group") {
            if (qf_group_name.empty()) throw UsageError("qf --mode group needs --group");
            PrimeField f(o.field.value_or(uint32_t(o.p)));
            QuasiFrobenius qf = qf_group(builtin_group_table(qf_group_name), o.p, f);
            os << "group: " << qf_group_name << "\np: " << o.p << "\nfield: F_" << f.p << "\n";
            for (auto& ev : qf.evidence) os << "check: " << ev << "\n";
            os << "valid: yes\n";
        } else if (qf_mode == "free") {
            PrimeField f(o.field.value_or(uint32_t(o.p)));
            FreeQfSlices s = qf_free(qf_dimv, o.p, f, o.weight_cap);
            os << "tensor algebra on " << qf_dimv << " generators, p = " << o.p << ", weights <= "
               << o.weight_cap << "\n";
            for (auto& ev : s.evidence) os << "check: " << ev << "\n";
            os << "valid: yes\n";
        } else if (qf_mode == "search") {
            Algebra a = load_algebra(o);
            os << "algebra: " << algebra_display(o, a) << "\np: " << o.p << "\n";
            os << "known constructors: diagonal embedding (group algebras), basis-diagonal (free algebras)\n";
            bool found = false;
            try {
                int64_t tdim = checked_power(a.dim, o.p, size_budget());
                SparseMat f(a.field, idx_t(tdim), a.dim);
                for (idx_t g = 0; g < a.dim; ++g) {
                    int64_t diag = 0;
                    for (int k = 0; k < o.p; ++k) diag = diag * a.dim + g;
                    f.col[g].push_back({idx_t(diag), 1});
                }
                QuasiFrobenius qf = qf_from_matrix(a, o.p, f);
                os << "basis-diagonal candidate: VALID quasi-Frobenius map\n";
                for (auto& ev : qf.evidence) os << "check: " << ev << "\n";
                found = true;
            } catch (const ValidationFailed& e) {
                os << "basis-diagonal candidate: rejected (" << e.what() << ")\n";
            }
            os << "search result: " << (found ? "found" : "none found; no claim that none exists") << "\n";
        } else {
            throw UsageError("qf: unknown --mode " + qf_mode);
        }
        emit(o, os.str());
        return 0;
    }
    if (app.got_subcommand(cmd_cartier)) {
        if (cartier_mode == "commutative") {
            CartierCertificate cert = inverse_cartier_commutative(nvars, o.p, o.weight_cap);
            emit(o, render_cartier_certificate(cert, o.format));
            return cert.all_iso() ? 0 : 2;
        }
        Algebra a = load_algebra(o);
        std::string gname;
        if (o.algebra.find("kZ2") != std::string::npos) gname = "Z2";
        else if (o.algebra.find("kZ3") != std::string::npos) gname = "Z3";
        else if (o.algebra.find("kZ4") != std::string::npos) gname = "Z4";
        else if (o.algebra.find("kS3") != std::string::npos) gname = "S3";
        else throw UnsupportedAlgebra("cartier verify: no quasi-Frobenius constructor applies to " + o.algebra);
        QuasiFrobenius qf = qf_group(builtin_group_table(gname), o.p, a.field);
        int nmax = o.nmax > o.bound + 6 ? o.nmax : o.bound + 6;
        CartierCertificate cert = cartier_phi(a, qf, o.bound, nmax);
        emit(o, render_cartier_certificate(cert, o.format));
        return cert.all_iso() ? 0 : 2;
    }
    if (app.got_subcommand(cmd_derham)) {
        DerhamReport rep = derham_cohomology(dr_nvars, dr_char, o.weight_cap);
        emit(o, render_derham_report(rep, o.format));
        return 0;
    }
    if (app.got_subcommand(cmd_deg)) {
        if (deg_mode == "charp") {
            CommutativeHodgeReport rep = hodge_commutative_charp(deg_p, o.weight_cap);
            std::ostringstream os;
            os << artifact_version() << " degeneration charp\n";
            for (auto& n : rep.notes) os << n << "\n";
            emit(o, os.str());
            return 0;
        }
        if (deg_mode == "char0") {
            DegenerationReport rep = hodge_commutative_char0(o.weight_cap, o.nmax);
            emit(o, render_degeneration_report(rep, o.format));
            return 0;
        }
        Algebra a = load_algebra(o);
        DegenerationReport rep = hodge_degeneration_check(a, o.nmax);
        rep.algebra = algebra_display(o, a);
        emit(o, render_degeneration_report(rep, o.format));
        return 0;
    }
    if (app.got_subcommand(cmd_uprime)) {
        Algebra a = load_algebra(o);
        CyclicObject e = i_star_a_sharp(a, o.p, o.nmax + 2);
        UPrimeCertificate cert = check_uprime_zero(e, o.nmax, uprime_assert);
        emit(o, render_uprime_certificate(cert, o.format));
        return cert.all_zero() ? 0 : 2;
    }
    if (app.got_subcommand(cmd_verify)) {
        std::vector<std::string> rest = cmd_verify->remaining();
        std::ifstream in(expected_path);
        if (!in) throw UsageError("cannot open " + expected_path);
        std::stringstream expected;
        expected << in.rdbuf();
        std::stringstream captured;
        std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
        int rc;
        try {
            rc = run_command(rest);
        } catch (...) {
            std::cout.rdbuf(old);
            throw;
        }
        std::cout.rdbuf(old);
        bool same = captured.str() == expected.str();
        std::cout << "verify: re-ran job (exit " << rc << "), output "
                  << (same ? "matches the stored report byte-for-byte" : "DIFFERS from the stored report")
                  << "\n";
        return same ? 0 : 2;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_command(args);
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const SizeBudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const WindowTooSmall& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const CycloError& e) {
        // mathematically inconclusive or validation-refuted outcomes
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
