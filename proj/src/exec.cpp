#include "lelosc/exec.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace lelosc {

int thread_count() {
    const char* env = std::getenv("LELOSC_THREADS");
    if (env == nullptr) return 1;
    try {
        const int n = std::stoi(std::string(env));
        return std::clamp(n, 1, 256);
    } catch (...) {
        return 1;
    }
}

} // namespace lelosc
