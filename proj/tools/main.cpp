#include "latlab_app/run.hpp"

int main(int argc, char** argv) { return latlab::app::cli_main(argc, argv); }
