# Phase 2F: command line and HTTP front ends
