#include "sphcontract/harness.hpp"

int main(int argc, char** argv) { return sphc::run_cli(argc, argv); }
