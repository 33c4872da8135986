#include "kerr/cli.hpp"

int main(int argc, char** argv) { return kerr::cli::main_entry(argc, argv); }
