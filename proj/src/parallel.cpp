#include "vbf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace vbf {

unsigned default_jobs() {
    if (const char* env = std::getenv("VBF_JOBS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace vbf
