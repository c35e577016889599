#include "k3cov/acceptance.hpp"

#include <cstdio>
#include <iostream>
#include <thread>

int main(int argc, char** argv) {
    std::vector<std::string> only(argv + 1, argv + argc);
    k3cov::AcceptanceOptions opt;
    opt.jobs = std::max(1u, std::thread::hardware_concurrency());
    int failed = 0;
    for (int id : k3cov::select_criteria(only)) {
        auto r = k3cov::run_criterion(id, opt);
        std::printf("[%s] criterion %2d  %-28s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(), r.title.c_str(), r.seconds);
        for (const auto& d : r.details) std::printf("         %s\n", d.c_str());
        if (!r.error.empty()) std::printf("         error: %s\n", r.error.c_str());
        failed += !r.pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
