"""Commands package for nary CLI."""
