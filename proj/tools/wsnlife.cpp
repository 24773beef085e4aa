#include "wsnlife/commands.hpp"

int main(int argc, char** argv) { return wsnlife::run_cli(argc, argv); }
