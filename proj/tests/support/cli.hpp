#ifndef PROVAUTH_TESTS_SUPPORT_CLI_HPP
#define PROVAUTH_TESTS_SUPPORT_CLI_HPP

// Drives the installed CLI binary (path in $PROVAUTH_BIN) and captures
// exit code and output.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace testsupport {

inline std::string cli_path() {
    const char* p = std::getenv("PROVAUTH_BIN");
    if (!p) throw std::runtime_error("PROVAUTH_BIN is not set");
    return p;
}

inline std::string samples_dir() {
    const char* p = std::getenv("PROVAUTH_SAMPLES");
    if (!p) throw std::runtime_error("PROVAUTH_SAMPLES is not set");
    return p;
}

struct CliResult {
    int code = -1;
    std::string output;
};

/// Runs `provauth <args>`; captures stdout, and stderr too when merged.
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string command = cli_path() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed: " + command);
    CliResult result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            auto candidate = base / ("provauth_test_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter_++) + "_" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                break;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::string write(const std::string& name, const std::string& content) const {
        auto file = path_ / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        return file.string();
    }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

} // namespace testsupport

#endif
