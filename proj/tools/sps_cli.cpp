#include "sps/cli/app.hpp"

int main(int argc, char** argv) { return sps::cli::main(argc, argv); }
