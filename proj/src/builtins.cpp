#include "cyclotome/builtins.hpp"

#include <algorithm>

namespace cyclotome {

const std::vector<BuiltinEntry>& builtin_catalog() {
    static const std::vector<BuiltinEntry> cat = [] {
        std::vector<BuiltinEntry> v{
            {"dual2", 2, "dual numbers k[x]/(x^2) over F_2, graded"},
            {"dual3", 3, "dual numbers k[x]/(x^2) over F_3, graded"},
            {"kS3", 5, "group algebra of the symmetric group S_3 over F_5"},
            {"kZ2", 2, "group algebra of Z/2 over F_2"},
            {"kZ3", 2, "group algebra of Z/3 over F_2"},
            {"kZ4", 2, "group algebra of Z/4 over F_2"},
            {"mat2", 3, "2x2 matrix algebra over F_3"},
            {"mat3", 2, "3x3 matrix algebra over F_2"},
            {"poly2cap3", 2, "truncated polynomials k[x]/(x^3) over F_2, graded"},
            {"poly2v2", 3, "truncated polynomials k[x,y]/(deg >= 2) over F_3, graded"},
        };
        std::sort(v.begin(), v.end(), [](const BuiltinEntry& a, const BuiltinEntry& b) { return a.name < b.name; });
        return v;
    }();
    return cat;
}

Algebra builtin_algebra(const std::string& name, std::optional<uint32_t> field_override) {
    std::string key = name;
    const std::string prefix = "builtin:";
    if (key.rfind(prefix, 0) == 0) key = key.substr(prefix.size());
    uint32_t p = 0;
    for (auto& e : builtin_catalog())
        if (e.name == key) p = e.default_p;
    if (p == 0) throw UsageError("unknown builtin algebra: " + key);
    PrimeField f(field_override.value_or(p));
    if (key == "kZ2") return group_algebra(cyclic_group_table(2), f);
    if (key == "kZ3") return group_algebra(cyclic_group_table(3), f);
    if (key == "kZ4") return group_algebra(cyclic_group_table(4), f);
    if (key == "kS3") return group_algebra(symmetric_group_table(3), f);
    if (key == "dual2" || key == "dual3") return truncated_polynomial(1, 2, f);
    if (key == "mat2") return matrix_algebra(2, f);
    if (key == "mat3") return matrix_algebra(3, f);
    if (key == "poly2cap3") return truncated_polynomial(1, 3, f);
    if (key == "poly2v2") return truncated_polynomial(2, 2, f);
    throw UsageError("unknown builtin algebra: " + key);
}

std::vector<std::vector<int>> builtin_group_table(const std::string& name) {
    std::string key = name;
    const std::string prefix = "builtin:";
    if (key.rfind(prefix, 0) == 0) key = key.substr(prefix.size());
    if (key == "Z1" || key == "trivial") return cyclic_group_table(1);
    if (key == "Z2" || key == "kZ2") return cyclic_group_table(2);
    if (key == "Z3" || key == "kZ3") return cyclic_group_table(3);
    if (key == "Z4" || key == "kZ4") return cyclic_group_table(4);
    if (key == "S3" || key == "kS3") return symmetric_group_table(3);
    throw UsageError("unknown builtin group: " + key);
}

} // namespace cyclotome
