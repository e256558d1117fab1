#include "csymrd/runconfig.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout
            << "csymrd - conditional symmetry toolkit for reaction-diffusion "
               "pairs\n\n"
               "commands:\n"
               "  catalog list [--json]\n"
               "  certify --system ID --operator QID [params] [--samples N] "
               "[--tol T]\n"
               "  reduce --triple {c3|t1r1|t1r2|t1r3|t1r4} [params]\n"
               "  integrate --triple ID --phi0 P --psi0 Q --t-end T [params]\n"
               "  exact eval --family {C9|C14|PlaneWave} --t-min A --t-max B "
               "--x-min C --x-max D [params]\n"
               "  classify --alpha1s A --alpha2s B --kappa K --k k --t0 T\n"
               "  simulate --system S-c13 --n N --t-end T [params]\n"
               "  convergence --system S-c13 --grids 64,128,256 [params]\n\n"
               "common flags: --seed S, --out FILE, --config FILE.json\n"
               "env: CSYM_RD_SEED sets the default seed, CSYMRD_KERNEL "
               "selects scalar|avx2\n";
        return 0;
    }
    return csymrd::run_cli(args, std::cout, std::cerr);
}
