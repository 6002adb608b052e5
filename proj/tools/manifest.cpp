#include "manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commlab/errors.hpp"

namespace commlab::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::io, "SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Artifacts::Artifacts(std::filesystem::path dir, bool primary_to_stdout)
    : dir_(std::move(dir)), primary_to_stdout_(primary_to_stdout) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void Artifacts::primary(const std::string& name, const std::string& bytes) {
    if (primary_to_stdout_) {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
        digests_[name] = sha256_hex(bytes);
        return;
    }
    add(name, bytes);
}

void Artifacts::add(const std::string& name, const std::string& bytes) {
    write_file(dir_ / name, bytes);
    digests_[name] = sha256_hex(bytes);
}

std::ostream& Artifacts::human() const { return primary_to_stdout_ ? std::cerr : std::cout; }

std::string Inputs::read(const json& params, const std::string& key) {
    const std::string path = params.at(key).get<std::string>();
    std::string bytes = read_file(path);
    record_[key] = {{"path", path}, {"sha256", sha256_hex(bytes)}};
    return bytes;
}

json make_manifest(std::string_view subcommand, const json& params, const Inputs& inputs,
                   const Artifacts& artifacts) {
    json outputs = json::object();
    for (const auto& [name, digest] : artifacts.digests()) outputs[name] = digest;
    return json{
        {"tool", "commlab"},
        {"version", COMMLAB_VERSION},
        {"subcommand", subcommand},
        {"parameters", params},
        {"inputs", inputs.record()},
        {"primary_to_stdout", artifacts.primary_to_stdout()},
        {"outputs", outputs},
    };
}

std::string dump_manifest(const json& manifest) { return manifest.dump(2) + "\n"; }

}  // namespace commlab::cli
