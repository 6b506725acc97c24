#include "qipsim/common.hpp"

namespace qipsim {

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t result = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base)
            throw CapExceededError("integer overflow computing " + std::to_string(base) +
                                   "^" + std::to_string(exp));
        result *= base;
    }
    return result;
}

}  // namespace qipsim
