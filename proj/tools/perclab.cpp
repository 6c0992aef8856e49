#include "perc/cli.hpp"

int main(int argc, char** argv) { return perc::cli::dispatch(argc, argv); }
