// Prints the modulus registry: the least irreducible polynomial of each degree.
#include "vbf/gf2n.hpp"

#include <iostream>

int main() {
    std::cout << "# least irreducible polynomial over F_2 of each degree\n"
              << vbf::render_modulus_registry(vbf::kMinDegree, vbf::kMaxDegree);
}
