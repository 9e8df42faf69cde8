#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "upc/parallel.hpp"

namespace upc::cli {

inline constexpr const char* kVersion = "upcsim 1.0.0";

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kRuntimeError = 2;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Header line, then one line per row; '\n' endings, no quoting.
std::string render_csv(const CsvTable& table);
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

/// SHA-1 of "blob <size>\0<content>", the object id git assigns to a file.
std::string git_blob_hash(std::string_view content);

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Closed-form power, oracle vs fading Monte Carlo, radius CDF and
/// worker-count determinism.
std::vector<SelfTestCheck> run_selftest(std::uint64_t master_seed, Execution exec);

/// Entry point of the upc_sim binary; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace upc::cli
