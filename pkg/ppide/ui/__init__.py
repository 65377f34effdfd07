"""Rich-powered terminal output components for ppide."""
