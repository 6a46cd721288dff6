#include "euler_gauss/cli.hpp"

int main(int argc, char** argv) { return euler_gauss::run_cli(argc, argv); }
