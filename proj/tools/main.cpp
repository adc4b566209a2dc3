#include "ekg/cli.hpp"

int main(int argc, char** argv) { return ekg::run_cli(argc, argv); }
