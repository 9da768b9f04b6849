#include "cyclotome/report.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace cyclotome {

static std::string hash_hex(uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string matrix_to_text(const SparseMat& m) {
    std::ostringstream os;
    write_triples(os, m);
    return os.str();
}

static nlohmann::ordered_json matrix_to_json(const SparseMat& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    nlohmann::ordered_json ent = nlohmann::ordered_json::array();
    std::vector<std::pair<std::pair<idx_t, idx_t>, uint32_t>> all;
    for (idx_t c = 0; c < m.cols; ++c)
        for (auto& e : m.col[c]) all.push_back({{e.row, c}, e.val});
    std::sort(all.begin(), all.end());
    for (auto& t : all) ent.push_back({t.first.first, t.first.second, t.second});
    j["entries"] = ent;
    return j;
}

std::string render_homology_report(const HomologyReport& r, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["version"] = artifact_version();
        j["kind"] = r.kind;
        j["object"] = r.object;
        j["algebra_hash"] = hash_hex(r.algebra_hash);
        j["field"] = r.field_p;
        j["p"] = r.p_cyclic;
        j["window"] = {{"cols", r.window_cols}, {"rows", r.window_rows}};
        j["lo"] = r.lo;
        j["dims"] = r.dims;
        if (r.kind == "HP") {
            j["stabilized_from"] = r.stabilized_from;
            j["hp"] = {r.hp_even, r.hp_odd};
        }
        j["notes"] = r.notes;
        return j.dump(1) + "\n";
    }
    std::ostringstream os;
    os << artifact_version() << " report\n";
    os << "kind: " << r.kind << "\n";
    os << "object: " << r.object << "\n";
    os << "algebra-hash: " << hash_hex(r.algebra_hash) << "\n";
    os << "field: F_" << r.field_p << "\n";
    os << "p: " << r.p_cyclic << "\n";
    os << "window: cols=" << r.window_cols << " rows=" << r.window_rows << "\n";
    os << "degrees: " << r.lo << ".." << r.lo + int(r.dims.size()) - 1 << "\n";
    os << "dims:";
    for (auto d : r.dims) os << " " << d;
    os << "\n";
    if (r.kind == "HP") {
        os << "stabilized-from: " << r.stabilized_from << "\n";
        os << "hp: (" << r.hp_even << ", " << r.hp_odd << ")\n";
    }
    for (auto& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string render_uprime_certificate(const UPrimeCertificate& c, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["version"] = artifact_version();
        j["kind"] = "uprime-certificate";
        j["object"] = c.object;
        j["algebra_hash"] = hash_hex(c.algebra_hash);
        j["degrees"] = c.degrees;
        j["h_dims"] = c.h_dims;
        std::vector<int> zeros(c.is_zero.begin(), c.is_zero.end());
        j["is_zero"] = zeros;
        return j.dump(1) + "\n";
    }
    std::ostringstream os;
    os << artifact_version() << " u'-certificate\n";
    os << "object: " << c.object << "\n";
    os << "algebra-hash: " << hash_hex(c.algebra_hash) << "\n";
    for (size_t k = 0; k < c.degrees.size(); ++k)
        os << "degree " << c.degrees[k] << ": dim HC = " << c.h_dims[k] << ", u' "
           << (c.is_zero[k] ? "= 0" : "NONZERO") << "\n";
    return os.str();
}

std::string render_vanishing_certificate(const VanishingCertificate& c, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["version"] = artifact_version();
        j["kind"] = "hp-vanishing-certificate";
        j["object"] = c.object;
        j["algebra_hash"] = hash_hex(c.algebra_hash);
        j["p"] = c.p;
        j["bound"] = c.bound;
        j["levels_checked"] = c.levels_checked;
        j["level_dims"] = c.level_dims;
        j["hp_vanishes"] = c.hp_vanishes;
        j["detail"] = c.detail;
        return j.dump(1) + "\n";
    }
    std::ostringstream os;
    os << artifact_version() << " vanishing-certificate\n";
    os << "object: " << c.object << "\n";
    os << "algebra-hash: " << hash_hex(c.algebra_hash) << "\n";
    os << "p: " << c.p << "\nbound: " << c.bound << "\n";
    os << "levels-checked: " << c.levels_checked << "\nlevel-dims:";
    for (auto d : c.level_dims) os << " " << d;
    os << "\nhp-vanishes: " << (c.hp_vanishes ? "yes" : "no") << "\n";
    os << "detail: " << c.detail << "\n";
    return os.str();
}

std::string render_cartier_certificate(const CartierCertificate& c, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["version"] = artifact_version();
        j["kind"] = "cartier-certificate";
        j["algebra"] = c.algebra;
        j["algebra_hash"] = hash_hex(c.algebra_hash);
        j["field"] = c.field_p;
        j["p"] = c.p;
        j["window"] = {c.lo, c.hi};
        std::vector<int> iso(c.iso.begin(), c.iso.end());
        j["iso"] = iso;
        j["src_dims"] = c.src_dims;
        j["dst_dims"] = c.dst_dims;
        if (c.stabilized_from >= 0) {
            j["stabilized_from"] = c.stabilized_from;
            j["hp"] = {c.hp_even, c.hp_odd};
        }
        nlohmann::ordered_json mats = nlohmann::ordered_json::array();
        for (auto& m : c.phi) mats.push_back(matrix_to_json(m));
        j["phi"] = mats;
        j["notes"] = c.notes;
        return j.dump(1) + "\n";
    }
    std::ostringstream os;
    os << artifact_version() << " cartier-certificate\n";
    os << "algebra: " << c.algebra << "\n";
    os << "algebra-hash: " << hash_hex(c.algebra_hash) << "\n";
    os << "field: F_" << c.field_p << "\np: " << c.p << "\n";
    os << "window: " << c.lo << ".." << c.hi << "\n";
    if (c.stabilized_from >= 0) {
        os << "stabilized-from: " << c.stabilized_from << "\n";
        os << "hp: (" << c.hp_even << ", " << c.hp_odd << ")\n";
    }
    for (size_t k = 0; k < c.iso.size(); ++k) {
        os << "slice " << k << ": src-dim " << c.src_dims[k] << " dst-dim " << c.dst_dims[k] << " iso "
           << (c.iso[k] ? "yes" : "NO") << "\n";
        os << "begin matrix\n" << matrix_to_text(c.phi[k]) << "end matrix\n";
    }
    for (auto& n : c.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string render_derham_report(const DerhamReport& r, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["version"] = artifact_version();
        j["kind"] = "derham";
        j["nvars"] = r.nvars;
        j["characteristic"] = r.characteristic;
        j["weight_cap"] = r.weight_cap;
        j["h"] = r.h;
        return j.dump(1) + "\n";
    }
    std::ostringstream os;
    os << artifact_version() << " derham\n";
    os << "nvars: " << r.nvars << "\ncharacteristic: " << r.characteristic << "\n";
    for (size_t i = 0; i < r.h.size(); ++i) {
        os << "H^" << i << " by weight:";
        for (auto d : r.h[i]) os << " " << d;
        os << "\n";
    }
    return os.str();
}

std::string render_degeneration_report(const DegenerationReport& r, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["version"] = artifact_version();
        j["kind"] = "degeneration";
        j["algebra"] = r.algebra;
        j["algebra_hash"] = hash_hex(r.algebra_hash);
        j["max_degree"] = r.max_degree;
        j["e1_sums"] = r.e1_sums;
        j["h_dims"] = r.h_dims;
        std::vector<int> deg(r.degenerate.begin(), r.degenerate.end());
        j["degenerate"] = deg;
        j["notes"] = r.notes;
        return j.dump(1) + "\n";
    }
    std::ostringstream os;
    os << artifact_version() << " degeneration\n";
    os << "algebra: " << r.algebra << "\n";
    os << "algebra-hash: " << hash_hex(r.algebra_hash) << "\n";
    for (size_t n = 0; n < r.e1_sums.size(); ++n)
        os << "degree " << n << ": sum E_1 = " << r.e1_sums[n] << ", dim H = " << r.h_dims[n] << " -> "
           << (r.degenerate[n] ? "degenerate" : "not degenerate") << "\n";
    for (auto& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

void dump_complex(std::ostream& os, const ChainComplex& c) {
    os << "complex lo=" << c.lo << " n=" << c.dims.size() << "\ndims:";
    for (auto d : c.dims) os << " " << d;
    os << "\n";
    for (size_t k = 1; k < c.dims.size(); ++k) {
        os << "differential " << c.lo + int(k) << "\n";
        write_triples(os, c.diff[k]);
        os << "end\n";
    }
}

ChainComplex read_complex(std::istream& is) {
    std::string word;
    ChainComplex c;
    size_t n;
    char eq;
    is >> word;
    if (word != "complex") throw std::runtime_error("read_complex: bad header");
    is >> word; // lo=X
    c.lo = std::stoi(word.substr(3));
    is >> word;
    n = size_t(std::stoul(word.substr(2)));
    is >> word; // dims:
    c.dims.resize(n);
    for (size_t k = 0; k < n; ++k) {
        int64_t d;
        is >> d;
        c.dims[k] = idx_t(d);
    }
    c.diff.resize(n);
    for (size_t k = 1; k < n; ++k) {
        int deg;
        is >> word >> deg;
        if (word != "differential") throw std::runtime_error("read_complex: expected differential");
        c.diff[k] = read_triples(is);
        is.clear();
        is >> word;
        if (word != "end") throw std::runtime_error("read_complex: expected end");
    }
    (void)eq;
    return c;
}

} // namespace cyclotome
