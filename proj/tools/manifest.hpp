#pragma once

// Run manifests: every subcommand records its resolved parameters, the
// digests of what it read and of everything it wrote. `commlab rerun`
// replays a manifest and checks the output digests.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

namespace commlab::cli {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes);

/// Whole file as bytes; IoError naming the path when it cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Collects a command's outputs. The primary artifact goes to stdout when
/// requested; everything else lands in the output directory.
class Artifacts {
  public:
    Artifacts(std::filesystem::path dir, bool primary_to_stdout);

    void primary(const std::string& name, const std::string& bytes);
    void add(const std::string& name, const std::string& bytes);

    /// Human-readable summaries: stdout, or stderr when stdout carries data.
    std::ostream& human() const;

    bool primary_to_stdout() const noexcept { return primary_to_stdout_; }
    const std::filesystem::path& dir() const noexcept { return dir_; }
    const std::map<std::string, std::string>& digests() const noexcept { return digests_; }

  private:
    std::filesystem::path dir_;
    bool primary_to_stdout_;
    std::map<std::string, std::string> digests_;
};

/// Input files read by a command, keyed by parameter name.
class Inputs {
  public:
    std::string read(const json& params, const std::string& key);
    const json& record() const noexcept { return record_; }

  private:
    json record_ = json::object();
};

json make_manifest(std::string_view subcommand, const json& params, const Inputs& inputs,
                   const Artifacts& artifacts);
std::string dump_manifest(const json& manifest);

inline constexpr const char* kManifestName = "manifest.json";

}  // namespace commlab::cli
