# Core components
