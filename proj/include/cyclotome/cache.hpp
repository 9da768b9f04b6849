#pragma once

#include "cyclotome/sparse.hpp"

#include <functional>
#include <string>

namespace cyclotome {

// Content-addressed matrix cache keyed by (algebra hash, construction tag,
// p, level). Entries are the triple interchange format; writes go through a
// temp file plus rename, so concurrent producers are safe and results are
// byte-identical with the cache hot or cold. An empty directory disables
// caching entirely.
class MatrixCache {
  public:
    explicit MatrixCache(std::string dir) : dir_(std::move(dir)) {}
    static MatrixCache from_env(); // CYCLOTOME_CACHE, or disabled

    bool enabled() const { return !dir_.empty(); }
    const std::string& dir() const { return dir_; }

    SparseMat get_or_build(uint64_t algebra_hash, const std::string& tag, int p, int level,
                           const std::function<SparseMat()>& build) const;

  private:
    std::string dir_;
};

// Process-wide cache used by the level builders; initialized from
// CYCLOTOME_CACHE, overridable by the CLI's --cache-dir.
const MatrixCache& global_matrix_cache();
void set_global_cache_dir(const std::string& dir);

} // namespace cyclotome
