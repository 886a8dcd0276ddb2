# criterion number -> one PASS/FAIL line; filled by test_acceptance, printed by conftest
ACCEPTANCE_LINES = {}
