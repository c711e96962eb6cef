#include "moment_forge/cli/run.hpp"

int main(int argc, char** argv) { return moment_forge::cli::run(argc, argv); }
