"""API routes and endpoints."""


