// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

// Runs the clonemap executable in a scratch directory and captures its output.

#ifndef CLONEMAP_TESTS_CLI_RUNNER_HPP
#define CLONEMAP_TESTS_CLI_RUNNER_HPP

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace cli {

struct Result {
    int status = -1;
    std::string out;
};

class Workspace {
public:
    explicit Workspace(const std::string& tag)
        : dir_(std::filesystem::temp_directory_path() /
               ("clonemap_" + tag + "_" + std::to_string(static_cast<long>(::getpid())))) {
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    ~Workspace() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    std::filesystem::path path(const std::string& name) const { return dir_ / name; }

    std::string write(const std::string& name, const std::string& bytes) const {
        std::ofstream f(path(name), std::ios::binary);
        f << bytes;
        return path(name).string();
    }

    std::string read(const std::string& name) const {
        std::ifstream f(path(name), std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    /// `args` is appended to the binary path verbatim; stderr is discarded
    /// unless the arguments redirect it.
    Result run(const std::string& args, bool keep_stderr = false) const {
        std::string cmd = "cd '" + dir_.string() + "' && '" + CLONEMAP_CLI_PATH + "' " + args;
        if (!keep_stderr) cmd += " 2>/dev/null";
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (!pipe) throw std::runtime_error("popen failed");
        Result r;
        char buf[4096];
        for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
        int raw = ::pclose(pipe);
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        return r;
    }

private:
    std::filesystem::path dir_;
};

}  // namespace cli

#endif
