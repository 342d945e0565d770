#include "cubesense/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cubesense {

namespace {
std::atomic<int> g_workers{0};

int detect_workers() {
    if (const char* env = std::getenv("THREADS")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}
}  // namespace

int worker_count() {
    int w = g_workers.load();
    return w > 0 ? w : detect_workers();
}

void set_worker_count(int workers) { g_workers.store(workers); }

}  // namespace cubesense
