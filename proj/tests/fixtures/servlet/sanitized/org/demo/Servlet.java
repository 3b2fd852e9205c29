package org.demo;

import java.sql.Connection;
import java.sql.ResultSet;
import java.sql.Statement;
import javax.servlet.http.HttpServlet;
import javax.servlet.http.HttpServletRequest;
import javax.servlet.http.HttpServletResponse;
import org.owasp.esapi.ESAPI;
import org.owasp.esapi.codecs.MySQLCodec;

public class Servlet extends HttpServlet {
    private Connection conn;

    protected void doPost(HttpServletRequest req, HttpServletResponse resp) throws Exception {
        String usr = req.getParameter("ID"); //source
        usr = ESAPI.encoder().encodeForSQL(new MySQLCodec(), usr); //sanitizer
        String query = "select * from user" +
             "where username='" + usr + "'";
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery(query); //sink
    }
}
