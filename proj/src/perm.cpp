#include "equiv/perm.hpp"

#include <cstdlib>

namespace equiv {

int max_perm_degree() {
    static int bound = [] {
        if (const char* env = std::getenv("EQUIV_MAX_PERM_DEGREE")) {
            int v = std::atoi(env);
            if (v >= 1 && v <= 12) return v;
        }
        return 8;
    }();
    return bound;
}

std::vector<Permutation> enumerate_sn(int n) {
    if (n < 0 || n > max_perm_degree())
        throw resource_error("enumerate_sn: degree " + std::to_string(n) +
                             " exceeds bound " + std::to_string(max_perm_degree()));
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<Permutation> out;
    out.reserve(factorial(n));
    do {
        out.push_back(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

std::vector<Permutation> enumerate_class(const Partition& lam) {
    std::vector<Permutation> out;
    for (const auto& p : enumerate_sn(lam.size()))
        if (cycle_type(p) == lam) out.push_back(p);
    return out;
}

}  // namespace equiv
