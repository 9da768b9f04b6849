#include "cyclotome/cache.hpp"

#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cyclotome {

MatrixCache MatrixCache::from_env() {
    const char* dir = std::getenv("CYCLOTOME_CACHE");
    return MatrixCache(dir ? dir : "");
}

static MatrixCache& mutable_global_cache() {
    static MatrixCache cache = MatrixCache::from_env();
    return cache;
}

const MatrixCache& global_matrix_cache() { return mutable_global_cache(); }

void set_global_cache_dir(const std::string& dir) { mutable_global_cache() = MatrixCache(dir); }

SparseMat MatrixCache::get_or_build(uint64_t algebra_hash, const std::string& tag, int p, int level,
                                    const std::function<SparseMat()>& build) const {
    if (!enabled()) return build();
    std::ostringstream name;
    name << std::hex << std::setw(16) << std::setfill('0') << algebra_hash << std::dec << "-" << tag << "-p"
         << p << "-n" << level << ".mat";
    std::filesystem::path path = std::filesystem::path(dir_) / name.str();
    {
        std::ifstream in(path);
        if (in) return read_triples(in);
    }
    SparseMat m = build();
    std::filesystem::create_directories(dir_);
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        write_triples(out, m);
    }
    std::filesystem::rename(tmp, path); // atomic publish
    return m;
}

} // namespace cyclotome
