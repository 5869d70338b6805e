#include "vfpns/cli.hpp"

int main(int argc, char** argv) {
    return vfpns::run_cli(argc, argv);
}
