#include "cli.hpp"

#include <iostream>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

int main(int argc, char** argv) {
#if defined(__GLIBC__)
    // Training allocates and frees the same large activation blocks every
    // batch; keep them on the heap instead of mapping fresh pages each time.
    mallopt(M_MMAP_THRESHOLD, 1 << 30);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
    return paire::cli::run(argc, argv, std::cout, std::cerr);
}
