#include "stacky/kernels.hpp"

#ifdef STACKY_HAVE_OPENMP
#include <omp.h>
#endif

namespace stacky::kernel {

bool openmp_enabled() {
#ifdef STACKY_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef STACKY_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace stacky::kernel
