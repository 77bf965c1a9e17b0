"""n-step matrix factorizations over k[x]."""
