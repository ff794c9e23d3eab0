// figures.hpp — canned datasets behind the `figures` subcommand

#pragma once

#include <filesystem>
#include <vector>

namespace otoc::figures {

struct Options {
    std::filesystem::path out;
    bool reduced = false; // shrink the expensive datasets to CI scale
    bool full = false;    // paper-scale sizes where the default is reduced
    int workers = 0;
};

// Each generator writes the CSV/JSON artifacts for one dataset family and
// returns the written paths.
std::vector<std::filesystem::path> fig1(const Options&);
std::vector<std::filesystem::path> fig2(const Options&);
std::vector<std::filesystem::path> fig3(const Options&);
std::vector<std::filesystem::path> fig4(const Options&);
std::vector<std::filesystem::path> fig5(const Options&);
std::vector<std::filesystem::path> fig6(const Options&);

} // namespace otoc::figures
