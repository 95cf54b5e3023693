#include "ccc/cli.hpp"

int main(int argc, char** argv) { return ccc::cli::dispatch(argc, argv); }
