"""Business logic services."""


