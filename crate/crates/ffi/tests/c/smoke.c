#include <stdio.h>
#include <string.h>
#include "raagscope.h"

int main(void) {
    RaagGraph *g = NULL;
    if (raag_graph_parse("Dhc", &g) != RAAG_OK) return 1;
    RaagVerdict v;
    char *json = NULL;
    if (raag_classify(g, 0, &v, &json) != RAAG_OK) return 2;
    if (v != RAAG_HAS_SURFACE_SUBGROUP) return 3;
    if (strstr(json, "\"obstruction\"") == NULL) return 4;
    raag_string_free(json);
    bool trivial = true;
    if (raag_word_is_trivial(g, "v1 v2", &trivial) != RAAG_OK || trivial) return 5;
    raag_graph_free(g);
    puts("ok");
    return 0;
}
