// Temp-directory fixtures and a helper for driving the CLI binary.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

namespace fs = std::filesystem;

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        dir_ = fs::temp_directory_path() /
               ("weblens-test-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~TempDir() { fs::remove_all(dir_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path write(const std::string& name, const std::string& content) const {
        const auto p = path(name);
        std::ofstream out(p);
        out << content;
        return p;
    }

private:
    fs::path dir_;
};

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the built CLI with stdout/stderr captured to files in dir.
inline CliResult run_cli(const TempDir& dir,
                         const std::vector<std::string>& args,
                         const std::string& tag = "run") {
    const auto out_path = dir.path(tag + ".out");
    const auto err_path = dir.path(tag + ".err");
    std::string cmd = std::string(WEBLENS_CLI_PATH);
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

}  // namespace fixtures
