# CCN simulator MCP - FastMCP integration for ccnsim
"""
This module provides an MCP (Model Context Protocol) server that wraps
the CcnSim facade, enabling experiment runs from MCP clients.
"""

from ccnsim.mcp.server import main, mcp

__all__ = ["mcp", "main"]
