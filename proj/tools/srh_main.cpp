#include "srh/runner.hpp"

int main(int argc, char** argv) { return srh::cli_main(argc, argv); }
