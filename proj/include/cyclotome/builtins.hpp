#pragma once

#include "cyclotome/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclotome {

struct BuiltinEntry {
    std::string name;
    uint32_t default_p;
    std::string provenance;
};

// sorted by name; stable across runs
const std::vector<BuiltinEntry>& builtin_catalog();

// "builtin:<name>" with an optional field override; everything in the
// catalog passes check_algebra on construction.
Algebra builtin_algebra(const std::string& name, std::optional<uint32_t> field_override = {});

// group tables by name (Z2, Z3, Z4, S3) for qf construction
std::vector<std::vector<int>> builtin_group_table(const std::string& name);

} // namespace cyclotome
