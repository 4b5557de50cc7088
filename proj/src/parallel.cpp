#include "cwc/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace cwc {

int default_threads()
{
    if (const char* env = std::getenv("CWCODE_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
            // fall through to the OpenMP default
        }
    }
    return omp_get_max_threads();
}

void set_threads(int threads)
{
    omp_set_num_threads(threads > 0 ? threads : default_threads());
}

}  // namespace cwc
