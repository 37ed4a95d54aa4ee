#include "ncairy/cli.hpp"

int main(int argc, char** argv) { return ncairy::run_command(argc, argv); }
