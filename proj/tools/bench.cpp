// Timing driver: completes a built-in presentation degree by degree and prints
// per-degree statistics.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ncalg/groebner.hpp"

int main(int argc, char** argv) {
    std::string family = argc > 1 ? argv[1] : "ugmodh";
    unsigned degree = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 6;
    unsigned threads = argc > 3 ? static_cast<unsigned>(std::atoi(argv[3])) : 1;
    ncalg::Presentation p = family == "ugmodh" ? ncalg::u_g_mod_h()
                            : family == "ug3" ? ncalg::u_g(3)
                            : family == "ug4" ? ncalg::u_g(4)
                            : family == "mccool4" ? ncalg::mccool_cohomology(4)
                                                  : ncalg::u_g_mod_h_dual();
    ncalg::GroebnerOptions opt;
    opt.threads = threads;
    opt.progress = [](const ncalg::DegreeStats& s) {
        std::printf("d=%u cand=%zu obs=%zu normal=%zu amb=%zu nz=%zu tnz=%zu t=%.2fs\n", s.degree, s.candidates,
                    s.obstructions, s.normal, s.ambiguities, s.nonzero_spolys, s.table_nonzeros, s.seconds);
        std::fflush(stdout);
    };
    auto gb = ncalg::compute_gb(p, p.order(), degree, opt);
    std::printf("basis size %zu\n", gb.size());
    return 0;
}
