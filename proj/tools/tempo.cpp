#include "tempo/commands.hpp"

int main(int argc, char** argv) { return tempo::run_command(argc, argv); }
