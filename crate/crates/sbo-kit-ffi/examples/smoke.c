#include <sbo_kit.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    SboOperator *op = NULL;
    if (sbo_juhl_new(3, 1, &op) != SBO_STATUS_OK) return 1;
    char *text = NULL;
    if (sbo_operator_render(op, SBO_FORMAT_PLAIN, &text) != SBO_STATUS_OK) return 2;
    int ok = strstr(text, "2") != NULL;
    sbo_string_free(text);
    sbo_operator_free(op);

    int vanishes = 0;
    if (sbo_vanish("1", "1", 3, 1, 1, 0, &vanishes, NULL) != SBO_STATUS_OK) return 3;
    if (!vanishes) return 4;

    SboSuiteConfig cfg = {0};
    cfg.l_max = 3;
    if (sbo_verify("gegenbauer", &cfg, NULL) != SBO_STATUS_OK) return 5;
    printf("abi smoke ok (%u)\n", sbo_abi_version());
    return ok ? 0 : 6;
}
